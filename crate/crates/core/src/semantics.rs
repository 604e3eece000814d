use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Default number of elements the brute-force enumerators accept.
pub const DEFAULT_GUARD: usize = 20;

/// The extension-based semantics supported by every solver in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Semantics {
    Cf,
    Adm,
    Com,
    Grd,
    Prf,
    Stb,
}

impl Semantics {
    pub const ALL: [Semantics; 6] = [
        Semantics::Cf,
        Semantics::Adm,
        Semantics::Com,
        Semantics::Grd,
        Semantics::Prf,
        Semantics::Stb,
    ];

    /// Semantics that splitting preserves.
    pub const SPLITTABLE: [Semantics; 5] = [
        Semantics::Stb,
        Semantics::Adm,
        Semantics::Com,
        Semantics::Prf,
        Semantics::Grd,
    ];

    pub fn token(self) -> &'static str {
        match self {
            Semantics::Cf => "cf",
            Semantics::Adm => "adm",
            Semantics::Com => "com",
            Semantics::Grd => "grd",
            Semantics::Prf => "prf",
            Semantics::Stb => "stb",
        }
    }
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for Semantics {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Semantics::ALL
            .into_iter()
            .find(|sem| sem.token() == s)
            .ok_or_else(|| Error::Validation(format!("unknown semantics `{s}`")))
    }
}

/// Bitmask evaluation shared by the ABA and SETAF reference enumerators.
///
/// Elements are numbered `0..len`; a set is a `u64` mask.
pub(crate) mod engine {
    use super::Semantics;
    use crate::error::{Error, Result};

    pub(crate) type Mask = u64;

    pub(crate) trait Evaluator {
        fn len(&self) -> usize;
        /// Elements attacked by `set`.
        fn attacked(&self, set: Mask) -> Mask;
        /// Every ⊆-minimal set attacking `element`.
        fn attackers(&self, element: usize) -> &[Mask];
        /// Elements derivable from `set` (identity for flat frameworks).
        fn closure(&self, set: Mask) -> Mask {
            set
        }
    }

    pub(crate) fn full(len: usize) -> Mask {
        if len == 64 {
            Mask::MAX
        } else {
            (1 << len) - 1
        }
    }

    pub(crate) fn check_guard(len: usize, guard: usize) -> Result<()> {
        let limit = guard.min(63);
        if len > limit {
            return Err(Error::GuardExceeded { limit, size: len });
        }
        Ok(())
    }

    fn defends<E: Evaluator>(ev: &E, attacked: Mask, element: usize) -> bool {
        ev.attackers(element)
            .iter()
            .all(|&tail| tail & attacked != 0)
    }

    /// Decides the semantics that need no comparison between sets.
    pub(crate) fn is_local<E: Evaluator>(ev: &E, set: Mask, sem: Semantics) -> bool {
        let attacked = ev.attacked(set);
        if attacked & set != 0 {
            return false;
        }
        match sem {
            Semantics::Cf => true,
            Semantics::Stb => ev.closure(set) == set && (set | attacked) == full(ev.len()),
            Semantics::Adm | Semantics::Com | Semantics::Grd | Semantics::Prf => {
                let admissible = (0..ev.len())
                    .filter(|i| set >> i & 1 == 1)
                    .all(|i| defends(ev, attacked, i));
                if !admissible || sem == Semantics::Adm {
                    return admissible;
                }
                (0..ev.len())
                    .filter(|i| set >> i & 1 == 0)
                    .all(|i| !defends(ev, attacked, i))
            }
        }
    }

    /// Least fixpoint of the defence function.
    pub(crate) fn grounded<E: Evaluator>(ev: &E) -> Mask {
        let mut current: Mask = 0;
        loop {
            let attacked = ev.attacked(current);
            let next = (0..ev.len())
                .filter(|&i| defends(ev, attacked, i))
                .fold(0, |m, i| m | 1 << i);
            if next == current {
                return current;
            }
            current = next;
        }
    }

    /// Decides membership of a single set. Grounded is checked against the
    /// fixpoint, preferred by scanning the strict supersets.
    pub(crate) fn check<E: Evaluator>(ev: &E, set: Mask, sem: Semantics) -> Result<bool> {
        match sem {
            Semantics::Grd => Ok(grounded(ev) == set),
            Semantics::Prf => {
                if !is_local(ev, set, Semantics::Com) {
                    return Ok(false);
                }
                let rest: Vec<usize> = (0..ev.len()).filter(|i| set >> i & 1 == 0).collect();
                check_guard(rest.len(), super::DEFAULT_GUARD)?;
                Ok((1..1u64 << rest.len()).all(|bits| {
                    let extra = (0..rest.len())
                        .filter(|j| bits >> j & 1 == 1)
                        .fold(0, |m, j| m | 1 << rest[j]);
                    !is_local(ev, set | extra, Semantics::Com)
                }))
            }
            local => Ok(is_local(ev, set, local)),
        }
    }

    /// All extensions as masks, in increasing mask order for the local
    /// semantics.
    pub(crate) fn enumerate<E: Evaluator>(ev: &E, sem: Semantics) -> Vec<Mask> {
        let n = ev.len();
        let local = match sem {
            Semantics::Grd | Semantics::Prf => Semantics::Com,
            other => other,
        };
        let found: Vec<Mask> = (0..=full(n)).filter(|&m| is_local(ev, m, local)).collect();
        match sem {
            Semantics::Grd => found
                .iter()
                .copied()
                .filter(|&m| !found.iter().any(|&o| o != m && o & m == o))
                .collect(),
            Semantics::Prf => found
                .iter()
                .copied()
                .filter(|&m| !found.iter().any(|&o| o != m && o & m == m))
                .collect(),
            _ => found,
        }
    }
}
