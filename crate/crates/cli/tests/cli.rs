// SPDX-License-Identifier: Apache-2.0

use std::process::Command;

use polyadic::parser::parse_expr;
use polyadic::serial::{deserialize, serialize};
use polyadic::session::{Format, Options, Session};
use polyadic_core::constraint::{frac, int};
use polyadic_core::sampling::Sampler;
use polyadic_core::{Atom, Element, GammaSpec, Point, Term, Transformation};

fn polyadic(args: &[&str]) -> (bool, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_polyadic"))
        .args(args)
        .output()
        .expect("spawn");
    (
        out.status.success(),
        String::from_utf8(out.stdout).expect("utf-8"),
    )
}

fn session() -> Session {
    Session::new(Options::default())
}

fn run(s: &mut Session, line: &str) -> String {
    let out = s.run_line(line);
    assert!(out.ok, "`{line}` failed: {}", out.text);
    out.text
}

#[test]
fn header_echoes_options() {
    let (ok, text) = polyadic(&[
        "--window",
        "5",
        "--depth",
        "3",
        "--coeff-height",
        "7",
        "help",
    ]);
    assert!(ok);
    assert_eq!(
        text.lines().next(),
        Some("# window=5 coeff_height=7 depth=3")
    );
}

#[test]
fn eq_cylindrified_tail_atom_is_one() {
    let (ok, text) = polyadic(&["eq", "c{0}(a(0))", "1"]);
    assert!(ok);
    assert_eq!(text.lines().nth(1), Some("true -"));
}

#[test]
fn eq_reports_separating_point() {
    let mut s = session();
    let text = run(&mut s, "eq a(0) a(1)");
    let (verdict, point) = text.trim().split_once(' ').unwrap();
    assert_eq!(verdict, "false");
    // A separating point lies in exactly one side: its coordinate sum is 0 or 1.
    let p = polyadic::parser::parse_point(point).unwrap();
    let sum = p.entries().fold(int(0), |acc, (_, v)| acc + v);
    assert!(sum == int(0) || sum == int(1));
}

#[test]
fn member_example() {
    let (ok, text) = polyadic(&["member", "{0:2,7:3}", "a(5)"]);
    assert!(ok);
    assert_eq!(text.lines().nth(1), Some("true"));
    let (_, text) = polyadic(&["member", "{0:2,7:2}", "a(5)"]);
    assert_eq!(text.lines().nth(1), Some("false"));
}

#[test]
fn records_format_quotes_values() {
    let (ok, text) = polyadic(&["--format", "records", "eval", "d(0,1)"]);
    assert!(ok);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "kind=header window=4 coeff_height=3 depth=2");
    assert_eq!(lines[1], "kind=eval value='[0 ; 0:1 1:-1 | 0]'");
    let fields = shlex::split(lines[1]).unwrap();
    assert_eq!(fields[1], "value=[0 ; 0:1 1:-1 | 0]");
}

#[test]
fn eval_examples() {
    assert_eq!(
        parse_expr("a(0)*a(1)")
            .unwrap()
            .eval(&Default::default())
            .unwrap(),
        Element::zero()
    );
    let c = parse_expr("c{0}(d(0,1))")
        .unwrap()
        .eval(&Default::default())
        .unwrap();
    assert!(c.equal(&Element::one()));
}

#[test]
fn cofinite_cylindrification_keeps_coordinate_zero() {
    // a(0) & s_0 = 1 forces the other coordinates to sum to -1, which any
    // value of s_0 = 1 can be extended to; so retaining coordinate 0 leaves
    // exactly s_0 = 1.
    let x = parse_expr("C{0}(a(0) & H(1; 0:1 | 0))")
        .unwrap()
        .eval(&Default::default())
        .unwrap();
    let values: Vec<_> = (-4..=4).map(|k| frac(k, 2)).collect();
    for v0 in &values {
        for v1 in &values {
            for v5 in &values {
                let p: Point = [(0, v0.clone()), (1, v1.clone()), (5, v5.clone())]
                    .into_iter()
                    .collect();
                assert_eq!(x.contains(&p), *v0 == int(1), "at {p}");
            }
        }
    }
}

#[test]
fn parse_examples() {
    let t = parse_expr("c{0}(a(0) & d(0,1))").unwrap();
    let expected = Term::Sum(int(0))
        .meet(Term::Diagonal(0, 1))
        .cylindrify(GammaSpec::single(0));
    assert_eq!(t, expected);
    assert_eq!(parse_expr("~1").unwrap(), Term::One.not());
    let h = Atom::hyperplane(
        int(3),
        polyadic_core::CoeffSeq::new([(0, int(1)), (1, int(2))], int(0)),
    );
    assert_eq!(
        parse_expr("s[0,1](H(3; 0:1 1:2 | 0))").unwrap(),
        Term::Atom(h).substitute(Transformation::transposition(0, 1))
    );
}

#[test]
fn parse_errors_report_offset_and_expectation() {
    let (ok, text) = polyadic(&["eval", "c{0}(a(0)"]);
    assert!(!ok);
    assert!(text.contains("parse error at byte 9"), "{text}");
    assert!(text.contains("`)`"), "{text}");
}

#[test]
fn unbound_identifier_is_an_error() {
    let out = session().run_line("eval x + 1");
    assert!(!out.ok);
    assert!(out.text.contains("unbound identifier `x`"));
}

#[test]
fn search_recovers_fused_generators() {
    let mut s = session();
    run(&mut s, "let x = d(0,1)");
    run(&mut s, "let y = H(1; 0:1 | 0)");
    run(&mut s, "let b = fuse(x, y, 2, 3)");
    let text = run(&mut s, "search --targets x,y --cands @b --depth 3");
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    let b = parse_expr("fuse(d(0,1), H(1; 0:1 | 0), 2, 3)")
        .unwrap()
        .eval(&Default::default())
        .unwrap();
    let env = [("b".to_string(), b)].into_iter().collect();
    for (line, target) in lines.iter().zip(["d(0,1)", "H(1; 0:1 | 0)"]) {
        assert!(line.starts_with("found "), "{line}");
        let rest = line.strip_prefix("found ").unwrap();
        let target = parse_expr(target)
            .unwrap()
            .eval(&Default::default())
            .unwrap();
        let rest = rest
            .strip_prefix(&format!("{} ", serialize(&target)))
            .unwrap();
        let (witness, depth) = rest.rsplit_once(' ').unwrap();
        assert!(depth.parse::<usize>().unwrap() <= 3);
        assert!(parse_expr(witness)
            .unwrap()
            .eval(&env)
            .unwrap()
            .equal(&target));
    }
}

#[test]
fn fusing_tail_atoms_is_rejected() {
    let out = session().run_line("let b = fuse(a(0), a(1), 2, 3)");
    assert!(!out.ok);
    assert!(out.text.contains("dimension set"), "{}", out.text);
}

#[test]
fn fuse_and_recover_round_trip_through_text() {
    let mut s = session();
    let fused = run(&mut s, "fuse d(0,1) \"H(2; 1:1 | 0)\" 4 5");
    let (b, ok) = fused.trim().rsplit_once(' ').unwrap();
    assert_eq!(ok, "true");
    let second = run(&mut s, &format!("recover \"{b}\" 4 5 second"));
    assert_eq!(second.trim(), "[2 ; 1:1 | 0]");
    let first = run(&mut s, &format!("recover \"{b}\" 4 5 first"));
    assert_eq!(first.trim(), "[0 ; 0:1 1:-1 | 0]");
}

#[test]
fn other_commands() {
    let mut s = session();
    assert_eq!(
        run(&mut s, "dims c{0}(a(0) & d(0,1))").trim(),
        "all except {0}"
    );
    assert_eq!(run(&mut s, "classify a(3)").trim(), "[3 ; | 1] Pof");
    assert_eq!(
        run(&mut s, "classify d(0,1)").trim(),
        "[0 ; 0:1 1:-1 | 0] Po"
    );
    assert_eq!(
        run(&mut s, "classify H(1; 0:2 | 1)").trim(),
        "[1/2 ; 0:1 | 1/2] Pol"
    );
    assert!(run(&mut s, "poz d(0,1) + H(2; 0:1 1:1 | 0)").starts_with("true "));
    assert!(run(&mut s, "poz ~d(0,1)").starts_with("false "));
    assert_eq!(run(&mut s, "empty a(0) * a(1)").trim(), "true -");
    assert_eq!(run(&mut s, "closure d(0,1)").lines().count(), 6);
    let dec = run(&mut s, "decompose \"y0 + y1 * d(0,1)\" --ys a(0),a(1)");
    assert_eq!(dec.lines().last(), Some("true"));
    assert!(run(&mut s, "fuse --all \"d(0,1),d(1,2),H(1; 0:1 | 0)\"").ends_with("true\n"));
    assert!(!s.run_line("frobnicate").ok);
}

#[test]
fn suite_exit_codes() {
    let (ok, text) = polyadic(&["suite", "tails"]);
    assert!(ok);
    assert!(text.contains("PASS"));
    let (ok, _) = polyadic(&["suite", "nonexistent"]);
    assert!(!ok);
}

#[test]
fn script_mode_skips_comments() {
    let dir = std::env::temp_dir().join(format!("polyadic-script-{}", std::process::id()));
    std::fs::write(&dir, "# a comment\n\nlet x = d(0,1)\neq x s[0,1](x)\n").unwrap();
    let (ok, text) = polyadic(&["--script", dir.to_str().unwrap()]);
    std::fs::remove_file(&dir).unwrap();
    assert!(ok);
    assert_eq!(
        text.lines().skip(1).collect::<Vec<_>>(),
        ["x [0 ; 0:1 1:-1 | 0]", "true -"]
    );
}

fn random_term(s: &mut Sampler, depth: usize) -> Term {
    let leaves = [
        Term::Sum(s.rational()),
        Term::Diagonal(s.coord(), s.coord()),
        Term::Atom(s.atom()),
        Term::var("x"),
        Term::Zero,
        Term::One,
    ];
    let t = s.boolean_term(&leaves, depth);
    match s.coord() % 5 {
        0 => t.cylindrify(GammaSpec::Finite([s.coord(), s.coord()].into())),
        1 => t.cylindrify(GammaSpec::Cofinite([s.coord()].into())),
        2 => t.substitute(s.transformation()),
        3 => t.join(random_term(s, depth.saturating_sub(1))).not(),
        _ => t,
    }
}

#[test]
fn parse_inverts_render() {
    let mut corpus: Vec<Term> = [
        "0",
        "1",
        "x",
        "a(0)",
        "a(-3/4)",
        "d(0,1)",
        "d(2,2)",
        "~~x",
        "x + y + z",
        "x + (y + z)",
        "x * (y + z)",
        "(x + y) * z",
        "~(x * y)",
        "c{}(x)",
        "c{0,3}(a(1))",
        "C{}(a(0))",
        "C{0}(a(0) * H(1; 0:1 | 0))",
        "s[0,1](H(3; 0:1 1:2 | 0))",
        "s{0->2,1->2}(d(0,1))",
        "fuse(x, y, 4, 5)",
        "recover(b, 4, 5, first)",
        "recover(fuse(x, y, 2, 3), 2, 3, second)",
        "H(0; | 1)",
        "H(-1/2; 3:7/3 | -2)",
    ]
    .iter()
    .map(|s| parse_expr(s).unwrap())
    .collect();
    let mut s = Sampler::new(11, 5, 6);
    corpus.extend((0..60).map(|_| random_term(&mut s, 3)));
    assert!(corpus.len() >= 50);
    for t in &corpus {
        let text = t.to_string();
        assert_eq!(&parse_expr(&text).unwrap(), t, "{text}");
    }
}

#[test]
fn serialization_round_trips() {
    let mut s = Sampler::new(23, 6, 8);
    for _ in 0..100 {
        let x = s.element();
        let text = serialize(&x);
        let back = deserialize(&text).unwrap();
        assert_eq!(back, x);
        assert_eq!(serialize(&back), text);
    }
}

#[test]
fn records_session_renders_errors() {
    let mut s = Session::new(Options {
        format: Format::Records,
        ..Options::default()
    });
    let out = s.run_line("eq 1");
    assert!(!out.ok);
    assert!(out.text.starts_with("kind=error message="));
}
