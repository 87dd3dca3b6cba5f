use serde::{Deserialize, Serialize};

/// One action index per agent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Profile(pub Vec<usize>);

/// Actions of every agent except one (`a_{-i}`), in agent order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SubProfile(pub Vec<usize>);

impl SubProfile {
    /// `(agent, action)` for every agent other than `excluded`.
    pub fn iter_agents(&self, excluded: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0
            .iter()
            .enumerate()
            .map(move |(k, &a)| (if k < excluded { k } else { k + 1 }, a))
    }

    /// The full profile `(action, self)` with `action` placed at `agent`.
    pub fn join(&self, agent: usize, action: usize) -> Profile {
        let mut out = Vec::with_capacity(self.0.len() + 1);
        out.extend_from_slice(&self.0[..agent]);
        out.push(action);
        out.extend_from_slice(&self.0[agent..]);
        Profile(out)
    }
}

impl Profile {
    pub fn without(&self, agent: usize) -> SubProfile {
        let mut v = self.0.clone();
        v.remove(agent);
        SubProfile(v)
    }
}

/// Odometer over a mixed-radix space; the first coordinate varies slowest.
#[derive(Debug, Clone)]
pub struct Profiles {
    radices: Vec<usize>,
    next: Option<Vec<usize>>,
}

impl Profiles {
    pub(crate) fn new(radices: Vec<usize>) -> Self {
        let next = if radices.iter().all(|&r| r > 0) {
            Some(vec![0; radices.len()])
        } else {
            None
        };
        Profiles { radices, next }
    }
}

impl Iterator for Profiles {
    type Item = Profile;

    fn next(&mut self) -> Option<Profile> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut k = succ.len();
        let mut advanced = false;
        while k > 0 {
            k -= 1;
            succ[k] += 1;
            if succ[k] < self.radices[k] {
                advanced = true;
                break;
            }
            succ[k] = 0;
        }
        if advanced {
            self.next = Some(succ);
        }
        Some(Profile(current))
    }
}
