use crate::model::Preference;

/// First failure of action/outcome separability, in `(x, x̃, z, z̃)` loop order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeparabilityViolation {
    /// 1: the ranking of outcomes changes with the action.
    /// 2: the ranking of actions changes with the outcome.
    pub clause: u8,
    pub x: usize,
    pub x_alt: usize,
    pub z: usize,
    pub z_alt: usize,
}

/// Checks both separability clauses:
///
/// 1. `(x,z) ≿ (x,z̃)` implies `(x̃,z) ≿ (x̃,z̃)`;
/// 2. `(x,z) ≿ (x̃,z)` implies `(x,z̃) ≿ (x̃,z̃)`;
///
/// for all actions `x, x̃` and outcomes `z, z̃`.
pub fn separability_violation(ord: &Preference) -> Option<SeparabilityViolation> {
    let (na, nz) = (ord.action_count(), ord.outcome_count());
    for x in 0..na {
        for x_alt in 0..na {
            for z in 0..nz {
                for z_alt in 0..nz {
                    let clause = if ord.weakly_prefers((x, z), (x, z_alt))
                        && !ord.weakly_prefers((x_alt, z), (x_alt, z_alt))
                    {
                        1
                    } else if ord.weakly_prefers((x, z), (x_alt, z))
                        && !ord.weakly_prefers((x, z_alt), (x_alt, z_alt))
                    {
                        2
                    } else {
                        continue;
                    };
                    return Some(SeparabilityViolation {
                        clause,
                        x,
                        x_alt,
                        z,
                        z_alt,
                    });
                }
            }
        }
    }
    None
}

pub fn is_separable(ord: &Preference) -> bool {
    separability_violation(ord).is_none()
}

/// True when `(x,z) ∼ (x̃,z)` for all actions and outcomes.
pub fn is_classical(ord: &Preference) -> bool {
    (0..ord.outcome_count()).all(|z| {
        let r = ord.rank_of(0, z);
        (1..ord.action_count()).all(|x| ord.rank_of(x, z) == r)
    })
}
