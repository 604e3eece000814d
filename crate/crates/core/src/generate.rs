//! Seeded random frameworks for property testing and benchmarking.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::aba::{Abaf, AtomId, Rule};
use crate::setaf::{ArgId, Attack, Setaf};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AbaParams {
    pub assumptions: usize,
    /// Non-assumption atoms besides the contraries.
    pub extra_atoms: usize,
    pub rules: usize,
    pub max_body: usize,
}

impl Default for AbaParams {
    fn default() -> Self {
        AbaParams {
            assumptions: 5,
            extra_atoms: 2,
            rules: 6,
            max_body: 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SetafParams {
    pub args: usize,
    pub attacks: usize,
    pub max_tail: usize,
}

impl Default for SetafParams {
    fn default() -> Self {
        SetafParams {
            args: 6,
            attacks: 8,
            max_tail: 3,
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A flat framework without dummy rules. Assumption `i` is named `a<i>` with
/// contrary `c_a<i>`; extra atoms are `p<i>`. Rule heads are contraries or
/// extra atoms, and bodies are drawn from atoms already derivable, so every
/// rule can fire.
pub fn random_abaf<R: Rng>(params: AbaParams, rng: &mut R) -> Abaf {
    let n = params.assumptions;
    let mut names: Vec<String> = (0..n).map(|i| format!("a{i}")).collect();
    names.extend((0..n).map(|i| format!("c_a{i}")));
    names.extend((0..params.extra_atoms).map(|i| format!("p{i}")));
    let heads: Vec<AtomId> = (n..names.len()).map(AtomId::from).collect();
    let mut pool: Vec<AtomId> = (0..n).map(AtomId::from).collect();
    let mut rules = Vec::new();
    if !heads.is_empty() && !pool.is_empty() {
        for _ in 0..params.rules {
            let head = *heads.choose(rng).unwrap();
            let candidates: Vec<AtomId> = pool.iter().copied().filter(|&b| b != head).collect();
            if candidates.is_empty() {
                continue;
            }
            let size = rng.gen_range(1..=params.max_body.max(1).min(candidates.len()));
            let body: Vec<AtomId> = candidates.choose_multiple(rng, size).copied().collect();
            rules.push(Rule::new(head, body));
            if !pool.contains(&head) {
                pool.push(head);
            }
        }
    }
    let contraries = (0..n).map(|i| (AtomId::from(i), AtomId::from(n + i)));
    Abaf::new(names, contraries, rules).expect("generated names are unique")
}

pub fn random_abaf_seeded(params: AbaParams, seed: u64) -> Abaf {
    random_abaf(params, &mut rng(seed))
}

/// A SETAF over arguments `x0, x1, ...` with nonempty tails.
pub fn random_setaf<R: Rng>(params: SetafParams, rng: &mut R) -> Setaf {
    let names: Vec<String> = (0..params.args).map(|i| format!("x{i}")).collect();
    let args: Vec<ArgId> = (0..params.args).map(ArgId::from).collect();
    let mut attacks = Vec::new();
    if !args.is_empty() {
        for _ in 0..params.attacks {
            let head = *args.choose(rng).unwrap();
            let size = rng.gen_range(1..=params.max_tail.max(1).min(args.len()));
            let tail: Vec<ArgId> = args.choose_multiple(rng, size).copied().collect();
            attacks.push(Attack::new(tail, head));
        }
    }
    Setaf::new(names, attacks).expect("generated names are unique")
}

pub fn random_setaf_seeded(params: SetafParams, seed: u64) -> Setaf {
    random_setaf(params, &mut rng(seed))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_generation_is_deterministic() {
        let params = AbaParams {
            assumptions: 5,
            extra_atoms: 2,
            rules: 6,
            max_body: 3,
        };
        assert_eq!(random_abaf_seeded(params, 1), random_abaf_seeded(params, 1));
        let sp = SetafParams::default();
        assert_eq!(random_setaf_seeded(sp, 9), random_setaf_seeded(sp, 9));
    }

    #[test]
    fn no_rules_means_no_attacks() {
        let d = random_abaf_seeded(
            AbaParams {
                rules: 0,
                ..AbaParams::default()
            },
            3,
        );
        assert!(d.rules().is_empty());
    }

    #[test]
    fn generated_frameworks_are_flat_and_dummy_free() {
        let mut r = rng(5);
        for _ in 0..500 {
            let params = AbaParams {
                assumptions: r.gen_range(1..=7),
                extra_atoms: r.gen_range(0..=3),
                rules: r.gen_range(0..=10),
                max_body: 3,
            };
            let d = random_abaf(params, &mut r);
            let report = d.validate();
            assert!(report.flat && report.dummy_rules.is_empty());
        }
    }
}
