// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeSet;

use polyadic_core::fusion::{compress_check, fuse_all, fuse_pair, recover, Dilation};
use polyadic_core::sampling::Sampler;
use polyadic_core::{Branch, Element, GammaSpec};

fn finite(seed: u64) -> Sampler {
    let mut s = Sampler::new(seed, 6, 8).finite();
    s.max_cells = 2;
    s
}

#[test]
fn recovery_round_trip() {
    let mut s = finite(1);
    for _ in 0..100 {
        let x = s.element();
        let y = s.element();
        let b = fuse_pair(&x, &y, 6, 7).unwrap();
        assert!(recover(&b, 6, 7, Branch::First).equal(&x), "{x}");
        assert!(recover(&b, 6, 7, Branch::Second).equal(&y), "{y}");
        let mut allowed = x.support();
        allowed.extend(y.support());
        allowed.extend([6, 7]);
        assert!(b.support().is_subset(&allowed));
    }
}

#[test]
fn fuse_all_recovers_triples() {
    let mut s = finite(2);
    for _ in 0..20 {
        let gens: Vec<Element> = (0..3).map(|_| s.element()).collect();
        let fused = fuse_all(&gens, &Dilation::above(&gens, 2)).unwrap();
        assert!(fused.verified);
    }
}

#[test]
fn compression_is_monotone() {
    let mut s = finite(3);
    for _ in 0..60 {
        let x = s.element();
        let j: BTreeSet<usize> = x.support();
        let mut wider = j.clone();
        wider.insert(s.coord());
        assert!(compress_check(&x, &j));
        assert!(compress_check(&x, &wider));
        let mut narrower = j.clone();
        if let Some(&c) = j.iter().next() {
            narrower.remove(&c);
            if compress_check(&x, &narrower) {
                assert!(compress_check(&x, &j));
            }
        }
    }
}

#[test]
fn recovery_stays_in_the_neat_reduct() {
    let mut s = finite(4);
    let w: BTreeSet<usize> = (0..6).collect();
    for _ in 0..60 {
        let x = s.element();
        let y = s.element();
        assert!(compress_check(&x, &w) && compress_check(&y, &w));
        let b = fuse_pair(&x, &y, 6, 7).unwrap();
        assert!(compress_check(&recover(&b, 6, 7, Branch::First), &w));
        assert!(compress_check(&recover(&b, 6, 7, Branch::Second), &w));
    }
}

#[test]
fn elements_lie_below_their_cylindrifications() {
    let mut s = Sampler::new(5, 6, 6);
    for n in 0..60 {
        let x = s.element();
        let picked: BTreeSet<usize> = (0..=n % 3).map(|_| s.coord()).collect();
        for g in [
            GammaSpec::Finite(picked.clone()),
            GammaSpec::Cofinite(picked),
        ] {
            assert!(x.leq(&x.cylindrify(&g)), "{x}");
        }
    }
}
