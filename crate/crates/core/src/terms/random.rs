use rand::Rng;

use super::{Comb, Term};

/// A random CL-pure term of depth at most `depth` whose leaves are basic
/// combinators or drawn from `vars` (as variables) and `consts` (as constants).
pub fn random_term(rng: &mut impl Rng, depth: usize, vars: &[&str], consts: &[&str]) -> Term {
    if depth == 0 || rng.gen_bool(0.3) {
        let n = Comb::ALL.len() + vars.len() + consts.len();
        let i = rng.gen_range(0..n);
        return if i < Comb::ALL.len() {
            Term::Comb(Comb::ALL[i])
        } else if i < Comb::ALL.len() + vars.len() {
            Term::var(vars[i - Comb::ALL.len()])
        } else {
            Term::constant(consts[i - Comb::ALL.len() - vars.len()])
        };
    }
    Term::app(
        random_term(rng, depth - 1, vars, consts),
        random_term(rng, depth - 1, vars, consts),
    )
}

/// A random closed term over the basic combinators.
pub fn random_closed(rng: &mut impl Rng, depth: usize) -> Term {
    random_term(rng, depth, &[], &[])
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn respects_depth_and_leaves() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let m = random_term(&mut rng, 4, &["x"], &["A"]);
            assert!(m.depth() <= 4);
            assert!(m.free_vars().iter().all(|v| &**v == "x"));
            assert!(random_closed(&mut rng, 3).is_basic_closed());
        }
    }
}
