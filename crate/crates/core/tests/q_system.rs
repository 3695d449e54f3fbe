//! Single-factor fermionic decompositions, viewed as characters, satisfy the
//! Q-system
//!
//! ```text
//! Q(a,m)^2 = Q(a,m+1) Q(a,m-1) + prod_{b ~ a} R(a,b,m)
//! ```
//!
//! with `t_a = max_d / d_a` and
//! `R = Q(b, m t_b / t_a)` when `t_b >= t_a`, otherwise
//! `R = prod_{k < r} Q(b, floor((m + k) / r))` for `r = t_a / t_b`.
//! Products are taken with the Brauer-Klimyk oracle, so this checks the
//! fermionic sum against an identity it was not built from.

use krfermion::fermionic::{fermionic_decomposition, Decomposition, FactorList};
use krfermion::rep_oracle::RepOracle;
use krfermion::RootSystem;

fn q(r: &RootSystem, a: usize, m: usize) -> Decomposition {
    fermionic_decomposition(r, &FactorList::single(r, a, m).unwrap())
}

fn sum(mut x: Decomposition, y: &Decomposition) -> Decomposition {
    for (w, m) in y.iter() {
        x.add(w.clone(), m.clone());
    }
    x
}

fn check(name: &str, max_level: usize) {
    let r = RootSystem::from_name(name).unwrap();
    let oracle = RepOracle::new(&r);
    let d = r.symmetrizers();
    let dmax = *d.iter().max().unwrap();
    let t = |a: usize| (dmax / d[a - 1]) as usize;
    for a in 1..=r.rank() {
        for m in 1..=max_level {
            let lhs = oracle.decomposition_tensor(&q(&r, a, m), &q(&r, a, m)).unwrap();
            let mut rest = Decomposition::irreducible(r.zero_weight());
            for b in r.neighbors(a - 1).map(|b| b + 1) {
                let factors: Vec<usize> = if t(b) >= t(a) {
                    vec![m * t(b) / t(a)]
                } else {
                    let ratio = t(a) / t(b);
                    (0..ratio).map(|k| (m + k) / ratio).collect()
                };
                for level in factors {
                    rest = oracle.decomposition_tensor(&rest, &q(&r, b, level)).unwrap();
                }
            }
            let shifted = oracle
                .decomposition_tensor(&q(&r, a, m + 1), &q(&r, a, m - 1))
                .unwrap();
            assert_eq!(lhs, sum(shifted, &rest), "{name} a={a} m={m}");
        }
    }
}

#[test]
fn simply_laced() {
    check("A3", 2);
    check("D4", 2);
}

#[test]
fn doubly_laced() {
    check("B2", 3);
    check("B3", 2);
    check("C3", 2);
}

#[test]
fn g2() {
    check("G2", 2);
}

#[test]
fn exceptional_level_one() {
    check("F4", 1);
    check("E6", 1);
}
