// SPDX-License-Identifier: Apache-2.0

//! The named acceptance suites run by `suite <name>`.

use std::collections::BTreeSet;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use polyadic_core::constraint::{frac, int};
use polyadic_core::constructions::{
    a_nat, decompose_sigma, generator_name, in_poz, po_pool, simplicity_witness, GBounds,
    GEnumeration, GMembership,
};
use polyadic_core::fusion::{fuse_all, fuse_pair, recover, Dilation};
use polyadic_core::sampling::Sampler;
use polyadic_core::{
    Branch, Cell, Element, GammaSpec, Literal, Point, Rational, Term, Transformation,
};

use crate::serial::deserialize;

pub struct Outcome {
    pub passed: bool,
    pub checks: usize,
    pub failures: Vec<String>,
    pub note: String,
    pub elapsed: Duration,
}

pub struct Suite {
    pub number: usize,
    pub name: &'static str,
    pub title: &'static str,
    run: fn(&Context) -> Checks,
}

/// What a suite may need from its caller.
pub struct Context<'a> {
    /// Binary to spawn for the cross-process determinism suite.
    pub exe: Option<&'a Path>,
}

#[derive(Default)]
struct Checks {
    count: usize,
    failed: usize,
    failures: Vec<String>,
    note: String,
}

impl Checks {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.count += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < 5 {
                self.failures.push(what());
            }
        }
    }
}

pub const SUITES: &[Suite] = &[
    Suite {
        number: 1,
        name: "axioms",
        title: "algebra axioms on 200 random elements",
        run: axioms,
    },
    Suite {
        number: 2,
        name: "qe",
        title: "QE differential test on 500 cells",
        run: qe,
    },
    Suite {
        number: 3,
        name: "tails",
        title: "weak-space tail semantics",
        run: tails,
    },
    Suite {
        number: 4,
        name: "antichain",
        title: "Pof antichain up to 50",
        run: antichain,
    },
    Suite {
        number: 5,
        name: "dichotomy",
        title: "Neg/Poz dichotomy on 100 terms",
        run: dichotomy,
    },
    Suite {
        number: 6,
        name: "sigma",
        title: "sigma identity on 100 terms",
        run: sigma,
    },
    Suite {
        number: 7,
        name: "fusion",
        title: "single-generator recovery",
        run: fusion,
    },
    Suite {
        number: 8,
        name: "pof-closure",
        title: "no a_n in bounded G({a_0})",
        run: pof_closure,
    },
    Suite {
        number: 9,
        name: "simplicity",
        title: "simplicity probe on 100 elements",
        run: simplicity,
    },
    Suite {
        number: 10,
        name: "determinism",
        title: "serialization determinism across runs",
        run: determinism,
    },
];

pub fn find(name: &str) -> Option<&'static Suite> {
    SUITES
        .iter()
        .find(|s| s.name == name || s.number.to_string() == name)
}

impl Suite {
    pub fn run(&self, ctx: &Context) -> Outcome {
        let start = Instant::now();
        let c = (self.run)(ctx);
        Outcome {
            passed: c.failed == 0 && c.count > 0,
            checks: c.count,
            failures: c.failures,
            note: c.note,
            elapsed: start.elapsed(),
        }
    }
}

/// Membership decided literal by literal from the coefficients.
fn holds(cell: &Cell, p: &Point) -> bool {
    cell.literals().all(|l| {
        let a = l.atom();
        let lhs = p
            .entries()
            .fold(int(0), |acc, (i, v)| acc + a.coeffs().get(i) * v);
        (&lhs == a.rhs()) == l.is_positive()
    })
}

fn distinct_pair(s: &mut Sampler) -> (usize, usize) {
    let i = s.coord();
    loop {
        let j = s.coord();
        if j != i {
            return (i, j);
        }
    }
}

fn axioms(_: &Context) -> Checks {
    let mut c = Checks::default();
    let mut s = Sampler::new(0xA1, 8, 8);
    let xs: Vec<Element> = (0..200).map(|_| s.element()).collect();
    let one = Element::one();
    for (n, x) in xs.iter().enumerate() {
        let y = &xs[(n + 1) % xs.len()];
        let (i, j) = distinct_pair(&mut s);
        let k = s.coord();
        let cix = x.cylindrify_at(i);
        let ciy = y.cylindrify_at(i);
        c.check(
            cix.cylindrify_at(j)
                .equal(&x.cylindrify_at(j).cylindrify_at(i)),
            || format!("c{i} c{j} x != c{j} c{i} x for {x}"),
        );
        c.check(x.leq(&cix), || format!("x not below c{i} x for {x}"));
        c.check(x.meet(&ciy).cylindrify_at(i).equal(&cix.meet(&ciy)), || {
            format!("c{i}(x * c{i} y) != c{i} x * c{i} y for {x} ; {y}")
        });

        let t = Transformation::transposition(i, j);
        let tx = x.substitute(&t);
        c.check(tx.substitute(&t).equal(x), || {
            format!("s[{i},{j}] not an involution on {x}")
        });
        c.check(
            x.join(y).substitute(&t).equal(&tx.join(&y.substitute(&t))),
            || format!("s[{i},{j}] does not preserve + on {x} ; {y}"),
        );
        c.check(
            x.complement().substitute(&t).equal(&tx.complement()),
            || format!("s[{i},{j}] does not preserve ~ on {x}"),
        );
        c.check(x.substitute(&Transformation::identity()).equal(x), || {
            format!("identity substitution changes {x}")
        });

        let dij = Element::diagonal(i, j);
        c.check(dij.cylindrify_at(i).equal(&one), || {
            format!("c{i} d({i},{j}) != 1")
        });
        c.check(Element::diagonal(i, i).equal(&one), || {
            format!("d({i},{i}) != 1")
        });
        c.check(
            dij.meet(&Element::diagonal(j, k))
                .leq(&Element::diagonal(i, k)),
            || format!("d({i},{j}) * d({j},{k}) not below d({i},{k})"),
        );
        c.check(dij.substitute(&t).equal(&dij), || {
            format!("s[{i},{j}] d({i},{j}) != d({i},{j})")
        });

        let gammas = [
            GammaSpec::Finite([i].into()),
            GammaSpec::Finite([i, j].into()),
            GammaSpec::Finite([k].into()),
            GammaSpec::Cofinite([i].into()),
        ];
        let g = &gammas[n % gammas.len()];
        let dual = |x: &Element, g: &GammaSpec| x.complement().cylindrify(g).complement();
        let dx = dual(x, g);
        c.check(dx.leq(x), || {
            format!("dual cylindrification not below x for {x}")
        });
        c.check(dx.substitute(&t).equal(&dual(&tx, &g.permuted(&t))), || {
            format!("s[{i},{j}] does not commute with the dual of {g:?} on {x}")
        });

        let tau = s.transformation();
        let sx = x.substitute(&tau);
        for _ in 0..5 {
            let p = s.point();
            let span = p.support().chain(tau.window()).max().map_or(0, |m| m + 1);
            let composed: Point = (0..span).map(|i| (i, p.get(tau.apply(i)))).collect();
            c.check(sx.contains(&p) == x.contains(&composed), || {
                format!("pointwise substitution fails for {x} under {tau} at {p}")
            });
        }
    }
    c
}

fn qe(_: &Context) -> Checks {
    let mut c = Checks::default();
    let mut s = Sampler::new(0xB2, 4, 4);
    s.max_literals = 4;
    let values: Vec<Rational> = (-6..=6).map(|k| frac(k, 12)).collect();
    let mut grid = vec![Point::zero()];
    for coord in 0..4 {
        grid = grid
            .iter()
            .flat_map(|p| {
                values.iter().map(move |v| {
                    let mut q = p.clone();
                    q.set(coord, v.clone());
                    q
                })
            })
            .collect();
    }
    let (mut sat, mut unsat, mut cells) = (0, 0, 0);
    while cells < 500 {
        // Every other cell is an overdetermined system of equalities, so
        // that a good share of verdicts are empty.
        let cell = if cells % 2 == 0 {
            s.cell()
        } else {
            let n = 4 + s.coord() % 3;
            Cell::new(
                (0..n)
                    .map(|_| Literal::positive(s.atom()))
                    .collect::<Vec<_>>(),
            )
        };
        let Some(cell) = cell else { continue };
        cells += 1;
        match cell.witness() {
            Some(w) => {
                sat += 1;
                c.check(holds(&cell, &w), || format!("witness {w} fails {cell}"));
            }
            None => {
                unsat += 1;
                let hit = grid.iter().find(|p| holds(&cell, p));
                c.check(hit.is_none(), || {
                    format!("{cell} reported empty but holds at {}", hit.expect("hit"))
                });
            }
        }
    }
    c.note = format!("{sat} sat, {unsat} unsat");
    c
}

fn tails(_: &Context) -> Checks {
    let mut c = Checks::default();
    let one = Element::one();
    c.check(a_nat(0).meet(&a_nat(1)).equal(&Element::zero()), || {
        "a_0 * a_1 != 0".into()
    });
    for n in 0..=10 {
        for i in 0..=5 {
            c.check(a_nat(n).cylindrify_at(i).equal(&one), || {
                format!("c{i} a_{n} != 1")
            });
        }
    }
    let cofinite = a_nat(0).cylindrify(&GammaSpec::Cofinite(BTreeSet::new()));
    c.check(cofinite.equal(&one), || format!("C{{}}(a_0) = {cofinite}"));
    let kept = a_nat(0).cylindrify(&GammaSpec::Cofinite([0].into()));
    c.check(kept.equal(&one), || format!("C{{0}}(a_0) = {kept}"));
    c
}

fn antichain(_: &Context) -> Checks {
    let mut c = Checks::default();
    let atoms: Vec<Element> = (0..=50).map(a_nat).collect();
    for (n, x) in atoms.iter().enumerate() {
        c.check(!x.is_empty(), || format!("a_{n} is empty"));
        for (m, y) in atoms.iter().enumerate().take(n) {
            c.check(x.meet(y).equal(&Element::zero()), || {
                format!("a_{n} * a_{m} != 0")
            });
        }
    }
    c
}

fn po_term(s: &mut Sampler, depth: usize) -> Term {
    let atoms = 1 + s.coord() % 4;
    let leaves: Vec<Term> = (0..atoms).map(|_| Term::Atom(s.po_atom())).collect();
    s.boolean_term(&leaves, depth)
}

fn dichotomy(_: &Context) -> Checks {
    let mut c = Checks::default();
    let mut s = Sampler::new(0xC5, 4, 3);
    let (mut small, mut large) = (0, 0);
    for _ in 0..100 {
        let t = po_term(&mut s, 3);
        let x = t.eval(&Default::default()).expect("closed term");
        match (in_poz(&x), in_poz(&x.complement())) {
            (Ok(a), Ok(b)) => {
                if a.in_poz {
                    small += 1;
                } else {
                    large += 1;
                }
                c.check(a.in_poz != b.in_poz, || {
                    format!("{t}: in_poz {} and {}", a.in_poz, b.in_poz)
                });
            }
            (Err(e), _) | (_, Err(e)) => c.check(false, || format!("{t}: {e}")),
        }
    }
    c.note = format!("{small} in Poz, {large} in Neg");
    c
}

fn sigma(_: &Context) -> Checks {
    let mut c = Checks::default();
    let mut s = Sampler::new(0xC6, 4, 3);
    for _ in 0..100 {
        let n = 1 + s.coord() % 3;
        let ys: Vec<Element> = s
            .subset(5, n)
            .into_iter()
            .map(|i| a_nat(i as u64))
            .collect();
        let mut leaves: Vec<Term> = (0..n).map(|i| Term::var(generator_name(i))).collect();
        leaves.extend((0..1 + s.coord() % 3).map(|_| Term::Atom(s.po_atom())));
        let g = s.boolean_term(&leaves, 4);
        match decompose_sigma(&g, &ys) {
            Ok(out) => c.check(out.verified, || format!("identity fails for {g}")),
            Err(e) => c.check(false, || format!("{g}: {e}")),
        }
    }
    c
}

fn fusion(_: &Context) -> Checks {
    let mut c = Checks::default();
    let mut s = Sampler::new(0xF7, 6, 8).finite();
    for _ in 0..200 {
        let x = s.element();
        let y = s.element();
        match fuse_pair(&x, &y, 6, 7) {
            Ok(b) => {
                c.check(recover(&b, 6, 7, Branch::First).equal(&x), || {
                    format!("first branch loses {x}")
                });
                c.check(recover(&b, 6, 7, Branch::Second).equal(&y), || {
                    format!("second branch loses {y}")
                });
            }
            Err(e) => c.check(false, || format!("{x} ; {y}: {e}")),
        }
    }
    for _ in 0..20 {
        let gens: Vec<Element> = (0..3).map(|_| s.element()).collect();
        match fuse_all(&gens, &Dilation::above(&gens, 2)) {
            Ok(f) => c.check(f.verified, || format!("fuse_all fails on {gens:?}")),
            Err(e) => c.check(false, || format!("fuse_all: {e}")),
        }
    }
    c
}

fn pof_closure(_: &Context) -> Checks {
    let mut c = Checks::default();
    let window: BTreeSet<usize> = (0..4).collect();
    let pool = po_pool(4, 3);
    let g = GEnumeration::new(
        vec![(Term::var("y0"), a_nat(0))],
        &pool,
        &window,
        GBounds {
            product_width: 3,
            sum_width: 3,
        },
    );
    c.check(g.member(&a_nat(0)).is_found(), || {
        "a_0 itself not found".into()
    });
    for n in 1..=20 {
        let verdict = g.member(&a_nat(n));
        c.check(verdict == GMembership::NotFoundWithinBounds, || {
            format!("a_{n} reached: {verdict:?}")
        });
    }
    c.note = format!(
        "consistent within bounds: {} products over {} base elements",
        g.products().len(),
        g.base().len()
    );
    c
}

fn simplicity(_: &Context) -> Checks {
    let mut c = Checks::default();
    let mut s = Sampler::new(0x59, 6, 6);
    for _ in 0..100 {
        let x = s.nonzero_element();
        c.check(simplicity_witness(&x).is_some(), || {
            format!("no finite Γ lifts {x} to 1")
        });
    }
    c
}

/// Seed and count of the element dump compared across processes.
pub const DETERMINISM_SEED: u64 = 0x5EED;
pub const DETERMINISM_COUNT: usize = 1000;

fn determinism(ctx: &Context) -> Checks {
    let mut c = Checks::default();
    let Some(exe) = ctx.exe else {
        c.check(false, || "no executable to spawn".into());
        return c;
    };
    let run = || {
        Command::new(exe)
            .args([
                "sample",
                &DETERMINISM_COUNT.to_string(),
                &DETERMINISM_SEED.to_string(),
            ])
            .output()
    };
    match (run(), run()) {
        (Ok(a), Ok(b)) => {
            c.check(a.status.success() && b.status.success(), || {
                "sample run failed".into()
            });
            c.check(a.stdout == b.stdout, || {
                "outputs differ between runs".into()
            });
            let text = String::from_utf8_lossy(&a.stdout);
            let lines: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
            c.check(lines.len() == DETERMINISM_COUNT, || {
                format!("{} elements printed", lines.len())
            });
            for line in lines {
                let ok = deserialize(line).is_ok_and(|x| x.to_string() == line);
                c.check(ok, || format!("`{line}` does not round-trip"));
            }
            c.note = format!("{} bytes per run", a.stdout.len());
        }
        (Err(e), _) | (_, Err(e)) => c.check(false, || format!("spawn: {e}")),
    }
    c
}

/// Elements printed by the `sample` command.
pub fn sample_elements(count: usize, seed: u64) -> Vec<Element> {
    let mut s = Sampler::new(seed, 8, 8);
    (0..count).map(|_| s.element()).collect()
}
