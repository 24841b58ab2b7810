#![allow(dead_code)]

use interdiction::generate::{random_instance, GenParams};
use interdiction::{
    find_lambda_star, FamilyOracle, GraphCutFamily, InterdictionInstance, LambdaCertificate,
    Rational,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn t1() -> InterdictionInstance {
    InterdictionInstance::parse("3 3 2\n1 2 4 2\n2 3 3 1\n1 3 5 3\n").unwrap()
}

/// Instance `i` of the small random corpus: n in [3, 7], m in [n-1, 12],
/// w in [0, 10], c in [1, 10], b in [0, 15], connected.
pub fn small_instance(i: u64) -> InterdictionInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0000 + i);
    let n = rng.random_range(3..=7usize);
    let m = rng.random_range(n - 1..=12usize);
    let params = GenParams {
        n,
        m,
        wmax: 10,
        cmax: 10,
        bmax: 15,
    };
    random_instance(&params, rng.random()).unwrap()
}

/// Instance `i` of the medium corpus: n in [4, 10], m in [n-1, 2n].
pub fn medium_instance(i: u64) -> InterdictionInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0DE_0000 + i);
    let n = rng.random_range(4..=10usize);
    let m = rng.random_range(n - 1..=2 * n);
    let params = GenParams {
        n,
        m,
        wmax: 10,
        cmax: 10,
        bmax: 15,
    };
    random_instance(&params, rng.random()).unwrap()
}

/// `None` when some cut's positive-weight part fits the budget.
pub fn certificate(inst: &InterdictionInstance) -> Option<LambdaCertificate> {
    let fam = GraphCutFamily::new(inst, Default::default());
    let ground = inst.ground();
    let (cost, _) = fam.min_cost_member(&ground.effective_costs()).unwrap();
    if cost <= ground.budget {
        return None;
    }
    Some(find_lambda_star(ground, &fam).unwrap())
}

pub fn random_lambda(rng: &mut ChaCha8Rng, max: &Rational) -> Rational {
    let den: u64 = rng.random_range(1..=24);
    let top = (max.clone() * Rational::from(den)).ceil();
    let top: u64 = u64::try_from(top).unwrap_or(1000).max(1);
    Rational::new(rng.random_range(0..=top), den).unwrap()
}
