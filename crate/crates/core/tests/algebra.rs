// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeSet;

use polyadic_core::sampling::Sampler;
use polyadic_core::{Element, GammaSpec, Point, Transformation};

fn sampler(seed: u64) -> Sampler {
    let mut s = Sampler::new(seed, 8, 8);
    s.max_cells = 2;
    s
}

fn coords(s: &mut Sampler) -> (usize, usize, usize) {
    let i = s.coord();
    let j = loop {
        let j = s.coord();
        if j != i {
            break j;
        }
    };
    (i, j, s.coord())
}

#[test]
fn cylindrification_axioms() {
    let mut s = sampler(1);
    for _ in 0..60 {
        let x = s.element();
        let y = s.element();
        let (i, j, _) = coords(&mut s);
        let cix = x.cylindrify_at(i);
        assert!(
            cix.cylindrify_at(j)
                .equal(&x.cylindrify_at(j).cylindrify_at(i)),
            "{x}"
        );
        assert!(x.leq(&cix), "{x}");
        let lhs = x.meet(&y.cylindrify_at(i)).cylindrify_at(i);
        assert!(lhs.equal(&cix.meet(&y.cylindrify_at(i))), "{x} ; {y}");
    }
}

#[test]
fn transpositions_are_boolean_involutions() {
    let mut s = sampler(2);
    for _ in 0..60 {
        let x = s.element();
        let y = s.element();
        let t = s.transposition();
        assert!(x.substitute(&t).substitute(&t).equal(&x));
        assert!(x
            .join(&y)
            .substitute(&t)
            .equal(&x.substitute(&t).join(&y.substitute(&t))));
        assert!(x
            .complement()
            .substitute(&t)
            .equal(&x.substitute(&t).complement()));
        assert_eq!(x.substitute(&Transformation::identity()), x);
    }
}

#[test]
fn diagonal_axioms() {
    for i in 0..5 {
        assert_eq!(Element::diagonal(i, i), Element::one());
        for j in 0..5 {
            if i == j {
                continue;
            }
            let dij = Element::diagonal(i, j);
            assert!(dij.cylindrify_at(i).equal(&Element::one()));
            assert!(dij
                .substitute(&Transformation::transposition(i, j))
                .equal(&dij));
            for k in 0..5 {
                assert!(dij
                    .meet(&Element::diagonal(j, k))
                    .leq(&Element::diagonal(i, k)));
            }
        }
    }
}

#[test]
fn substitution_commutes_with_dual_cylindrification() {
    let mut s = sampler(3);
    for n in 0..60 {
        let x = s.element();
        let t = s.transposition();
        let (i, j, k) = coords(&mut s);
        let gamma: BTreeSet<usize> = [i, j, k].into_iter().take(1 + n % 3).collect();
        let g = if n % 2 == 0 {
            GammaSpec::Finite(gamma)
        } else {
            GammaSpec::Cofinite(gamma)
        };
        let dual = |x: &Element, g: &GammaSpec| x.complement().cylindrify(g).complement();
        let lhs = dual(&x, &g).substitute(&t);
        let rhs = dual(&x.substitute(&t), &g.permuted(&t));
        assert!(lhs.equal(&rhs), "{x} under {t}");
        assert!(dual(&x, &g).leq(&x));
    }
}

/// `(p ∘ τ)(i) = p(τ(i))`, computed coordinate by coordinate.
fn compose(p: &Point, t: &Transformation, span: usize) -> Point {
    (0..span).map(|i| (i, p.get(t.apply(i)))).collect()
}

#[test]
fn substitution_is_pointwise_pullback() {
    let mut s = sampler(4);
    for _ in 0..80 {
        let x = s.element();
        let t = s.transformation();
        let sx = x.substitute(&t);
        for _ in 0..10 {
            let p = match sx.witness().filter(|_| s.coord().is_multiple_of(2)) {
                Some(w) => w,
                None => s.point(),
            };
            let span = p.support().chain(t.window()).max().map_or(0, |m| m + 1);
            assert_eq!(
                sx.contains(&p),
                x.contains(&compose(&p, &t, span)),
                "{x} under {t} at {p}"
            );
        }
    }
}
