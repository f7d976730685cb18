//! Pure profile spaces and deletion traces.

use crate::game::{for_each_profile, Game, GameError};
use serde_json::{json, Value};

/// A product `S_1 × … × S_n` of nonempty action subsets, each kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PureSpace {
    sets: Vec<Vec<usize>>,
}

impl PureSpace {
    pub fn full(g: &Game) -> PureSpace {
        PureSpace {
            sets: (0..g.players()).map(|i| (0..g.num_actions(i)).collect()).collect(),
        }
    }

    pub fn new(g: &Game, mut sets: Vec<Vec<usize>>) -> Result<PureSpace, GameError> {
        if sets.len() != g.players() {
            return Err(GameError::ProfileLength {
                expected: g.players(),
                found: sets.len(),
            });
        }
        for (player, s) in sets.iter_mut().enumerate() {
            s.sort_unstable();
            s.dedup();
            if s.is_empty() {
                return Err(GameError::NoActions { player });
            }
            if let Some(&a) = s.iter().find(|&&a| a >= g.num_actions(player)) {
                return Err(GameError::ActionOutOfRange { player, action: a });
            }
        }
        Ok(PureSpace { sets })
    }

    pub fn from_labels(g: &Game, labels: &[&[&str]]) -> Result<PureSpace, GameError> {
        let sets = labels
            .iter()
            .enumerate()
            .map(|(i, ls)| ls.iter().map(|l| g.action_index(i, l)).collect())
            .collect::<Result<Vec<_>, _>>()?;
        PureSpace::new(g, sets)
    }

    pub fn players(&self) -> usize {
        self.sets.len()
    }

    pub fn set(&self, player: usize) -> &[usize] {
        &self.sets[player]
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn contains(&self, player: usize, action: usize) -> bool {
        self.sets[player].binary_search(&action).is_ok()
    }

    /// Replaces player `player`'s set.
    pub fn with_set(&self, player: usize, set: Vec<usize>) -> PureSpace {
        let mut sets = self.sets.clone();
        let mut set = set;
        set.sort_unstable();
        set.dedup();
        sets[player] = set;
        PureSpace { sets }
    }

    pub fn is_subset_of(&self, other: &PureSpace) -> bool {
        self.sets
            .iter()
            .enumerate()
            .all(|(i, s)| s.iter().all(|&a| other.contains(i, a)))
    }

    pub fn size(&self) -> usize {
        self.sets.iter().map(|s| s.len()).product()
    }

    /// Calls `f` on every full profile whose opponents range over `S_{-i}`;
    /// position `player` holds the first action of `S_i` and should be overwritten.
    pub fn for_each_opponent_profile(&self, player: usize, f: impl FnMut(&[usize])) {
        let mut sets = self.sets.clone();
        sets[player] = vec![self.sets[player][0]];
        for_each_profile(&sets, f);
    }

    pub fn labels(&self, g: &Game, player: usize) -> Vec<String> {
        self.sets[player].iter().map(|&a| g.label(player, a).to_string()).collect()
    }

    pub fn to_json(&self, g: &Game) -> Value {
        json!((0..self.players()).map(|i| self.labels(g, i)).collect::<Vec<_>>())
    }

    /// `{97} x {97}`-style rendering.
    pub fn describe(&self, g: &Game) -> String {
        (0..self.players())
            .map(|i| format!("{{{}}}", self.labels(g, i).join(",")))
            .collect::<Vec<_>>()
            .join(" x ")
    }
}

/// One application of a deletion operator.
#[derive(Debug, Clone)]
pub struct Round<S, M> {
    /// The space produced by this application.
    pub space: S,
    /// Regrets, witnesses or certificates computed on the input space.
    pub meta: M,
    pub changed: bool,
}

/// The sequence `S^0 ⊇ S^1 ⊇ …` produced by iterating an operator.
///
/// `rounds` lists every application including the last one, whose output
/// equals its input and confirms the fixed point.
#[derive(Debug, Clone)]
pub struct DeletionTrace<S, M> {
    pub operator: String,
    pub initial: S,
    pub rounds: Vec<Round<S, M>>,
    pub fixed_point: S,
}

impl<S: Clone + PartialEq, M> DeletionTrace<S, M> {
    /// Number of applications that removed something.
    pub fn rounds_of_change(&self) -> usize {
        self.rounds.iter().filter(|r| r.changed).count()
    }

    /// `S^k`: the initial space for `k == 0`, else the output of application `k`.
    pub fn space(&self, k: usize) -> &S {
        if k == 0 {
            &self.initial
        } else {
            &self.rounds[(k - 1).min(self.rounds.len() - 1)].space
        }
    }

    /// Runs `step` from `initial` until it returns its input, or until
    /// `limit` applications have changed the space.
    pub fn iterate<E>(
        operator: &str,
        initial: S,
        limit: Option<usize>,
        mut step: impl FnMut(&S) -> Result<(S, M), E>,
    ) -> Result<DeletionTrace<S, M>, IterateError<S, M, E>> {
        let mut trace = DeletionTrace {
            operator: operator.to_string(),
            fixed_point: initial.clone(),
            initial,
            rounds: Vec::new(),
        };
        loop {
            let current = trace.fixed_point.clone();
            let (next, meta) = match step(&current) {
                Ok(x) => x,
                Err(e) => return Err(IterateError::Step { partial: trace, error: e }),
            };
            let changed = next != current;
            trace.rounds.push(Round {
                space: next.clone(),
                meta,
                changed,
            });
            trace.fixed_point = next;
            if !changed {
                return Ok(trace);
            }
            if let Some(limit) = limit {
                if trace.rounds_of_change() >= limit {
                    return Err(IterateError::RoundLimit { partial: trace, limit });
                }
            }
        }
    }
}

#[derive(Debug)]
pub enum IterateError<S, M, E> {
    Step { partial: DeletionTrace<S, M>, error: E },
    RoundLimit { partial: DeletionTrace<S, M>, limit: usize },
}

impl<S, M, E: std::fmt::Display> std::fmt::Display for IterateError<S, M, E> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            IterateError::Step { error, partial } => {
                write!(f, "{} after {} rounds", error, partial.rounds.len())
            }
            IterateError::RoundLimit { limit, .. } => {
                write!(f, "no fixed point within {} rounds", limit)
            }
        }
    }
}

impl<S: std::fmt::Debug, M: std::fmt::Debug, E: std::fmt::Display + std::fmt::Debug> std::error::Error
    for IterateError<S, M, E>
{
}

impl<S: Clone + PartialEq, M> DeletionTrace<S, M> {
    /// JSON form; `key` names the per-round metadata field.
    pub fn to_json(&self, key: &str, space: impl Fn(&S) -> Value, meta: impl Fn(&M) -> Value) -> Value {
        let rounds: Vec<Value> = self
            .rounds
            .iter()
            .map(|r| {
                let mut o = serde_json::Map::new();
                o.insert("space".into(), space(&r.space));
                o.insert(key.into(), meta(&r.meta));
                o.insert("changed".into(), r.changed.into());
                Value::Object(o)
            })
            .collect();
        json!({
            "operator": self.operator,
            "initial": space(&self.initial),
            "rounds": rounds,
            "fixed_point": space(&self.fixed_point),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn space_construction_sorts_and_checks() {
        let g = generators::rps().unwrap();
        let s = PureSpace::new(&g, vec![vec![2, 0, 2], vec![1]]).unwrap();
        assert_eq!(s.set(0), &[0, 2]);
        assert!(s.is_subset_of(&PureSpace::full(&g)));
        assert!(PureSpace::new(&g, vec![vec![], vec![1]]).is_err());
        assert!(PureSpace::new(&g, vec![vec![3], vec![1]]).is_err());
        assert_eq!(s.describe(&g), "{r,p} x {s}");
    }

    #[test]
    fn opponent_profiles_cover_the_cross_product() {
        let g = generators::random_game(&[2, 3, 2], 0, 0, |_, _| 0);
        let s = PureSpace::new(&g, vec![vec![0, 1], vec![0, 2], vec![1]]).unwrap();
        let mut seen = Vec::new();
        s.for_each_opponent_profile(0, |p| seen.push((p[1], p[2])));
        assert_eq!(seen, vec![(0, 1), (2, 1)]);
    }

    #[test]
    fn iterate_stops_at_a_fixed_point_or_the_limit() {
        let t = DeletionTrace::<u32, ()>::iterate("halve", 40, None, |x| Ok::<_, ()>((x / 2, ()))).unwrap();
        assert_eq!(t.fixed_point, 0);
        assert_eq!(t.rounds_of_change(), 6);
        assert_eq!(*t.space(1), 20);
        let e = DeletionTrace::<u32, ()>::iterate("halve", 40, Some(3), |x| Ok::<_, ()>((x / 2, ())));
        assert!(matches!(e, Err(IterateError::RoundLimit { .. })));
    }
}
