// SPDX-License-Identifier: Apache-2.0

//! Command interpreter. One `Session` holds the options and the named
//! bindings; each command yields records rendered as text or `key=value`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use polyadic_core::constructions::{
    classify, decompose_sigma, generator_name, generator_search, in_poz, s_closure, SearchBounds,
    SearchStatus,
};
use polyadic_core::fusion::{certify, fuse_all, recover, Dilation};
use polyadic_core::term::Env;
use polyadic_core::{Atom, Branch, Element, Term};

use crate::parser::{parse_expr, parse_point, split_top_level, ParseError};
use crate::serial::{deserialize, serialize};
use crate::suites::{self, Context};

#[derive(Debug, thiserror::Error)]
pub enum CommandError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Engine(#[from] polyadic_core::Error),
    #[error("{0}")]
    Usage(String),
}

type Result<T> = std::result::Result<T, CommandError>;

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(CommandError::Usage(msg.into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Records,
}

#[derive(Clone, Debug)]
pub struct Options {
    /// Coordinates `0..window` used by closure and search.
    pub window: usize,
    /// Bound on numerators and denominators of sampled rationals.
    pub coeff_height: i64,
    pub depth: usize,
    pub format: Format,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            window: 4,
            coeff_height: 3,
            depth: 2,
            format: Format::Text,
        }
    }
}

/// Ordered fields of one output line.
pub type Record = Vec<(&'static str, String)>;

pub struct Session {
    pub options: Options,
    env: Env,
    /// Binary spawned by the determinism suite.
    pub exe: Option<PathBuf>,
}

/// Outcome of one command. `ok` is false on errors and failed suites.
pub struct Output {
    pub text: String,
    pub ok: bool,
}

const HELP: &str = "\
let NAME = EXPR              bind NAME to the value of EXPR
eval E                       canonical form of E
eq E1 E2                     semantic equality, with a separating point when false
empty E                      emptiness, with a member when nonempty
member POINT E               membership of {i:v, ...} in E
witness E                    some member of E
dims E                       dimension set
classify ATOM                hyperplane family of a single atom
poz E                        small-ideal test for elements built from Po atoms
closure E,E,...              closure under window transpositions
search --targets E,.. --cands E,.. [--depth N] [--max-items N]
decompose G --ys E,..        sigma decomposition of G over y0, y1, ...
fuse X Y K L                 fuse two elements and certify recovery
fuse --all E,E,...           fuse several elements over fresh pairs
recover B K L first|second   extract one branch of a fused element
suite NAME|all               run an acceptance suite
sample N SEED                print N seeded random elements
help                         this text";

impl Session {
    pub fn new(options: Options) -> Self {
        Session {
            options,
            env: Env::new(),
            exe: None,
        }
    }

    pub fn header(&self) -> String {
        let o = &self.options;
        let body = format!(
            "window={} coeff_height={} depth={}",
            o.window, o.coeff_height, o.depth
        );
        match o.format {
            Format::Text => format!("# {body}"),
            Format::Records => format!("kind=header {body}"),
        }
    }

    fn render(&self, kind: &str, records: &[Record]) -> String {
        let mut out = String::new();
        for r in records {
            match self.options.format {
                Format::Text => {
                    let values: Vec<&str> = r.iter().map(|(_, v)| v.as_str()).collect();
                    out.push_str(&values.join(" "));
                }
                Format::Records => {
                    out.push_str("kind=");
                    out.push_str(kind);
                    for (k, v) in r {
                        let quoted =
                            shlex::try_quote(v).map_or_else(|_| v.clone(), |q| q.into_owned());
                        let _ = write!(out, " {k}={quoted}");
                    }
                }
            }
            out.push('\n');
        }
        out
    }

    /// Runs one line. Blank lines and `#` comments produce no output.
    pub fn run_line(&mut self, line: &str) -> Output {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            return Output {
                text: String::new(),
                ok: true,
            };
        }
        let (cmd, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match self.dispatch(cmd, rest) {
            Ok((records, ok)) => Output {
                text: self.render(cmd, &records),
                ok,
            },
            Err(e) => Output {
                text: match self.options.format {
                    Format::Text => format!("error: {e}\n"),
                    Format::Records => self.render("error", &[vec![("message", e.to_string())]]),
                },
                ok: false,
            },
        }
    }

    fn eval(&self, src: &str) -> Result<Element> {
        Ok(parse_expr(src)?.eval(&self.env)?)
    }

    fn dispatch(&mut self, cmd: &str, rest: &str) -> Result<(Vec<Record>, bool)> {
        let args =
            || shlex::split(rest).ok_or_else(|| CommandError::Usage("unbalanced quotes".into()));
        let one = |v: Record| Ok((vec![v], true));
        match cmd {
            "help" => Ok((
                HELP.lines()
                    .map(|l| vec![("usage", l.to_string())])
                    .collect(),
                true,
            )),
            "let" => {
                let Some((name, src)) = rest.split_once('=') else {
                    return usage("expected `let NAME = EXPR`");
                };
                let name = name.trim();
                let name = name.strip_prefix('@').unwrap_or(name);
                let starts_alpha = name.chars().next().is_some_and(|c| c.is_alphabetic());
                if !starts_alpha || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
                    return usage(format!("`{name}` is not a name"));
                }
                let value = self.eval(unquote(src.trim()))?;
                let text = serialize(&value);
                self.env.insert(name.to_string(), value);
                one(vec![("name", name.to_string()), ("value", text)])
            }
            "eq" => {
                let [a, b] = exactly::<2>(args()?, "eq E1 E2")?;
                let (x, y) = (self.eval(&a)?, self.eval(&b)?);
                let w = x.separating_witness(&y);
                one(vec![
                    ("equal", w.is_none().to_string()),
                    ("witness", w.map_or("-".into(), |p| p.to_string())),
                ])
            }
            "eval" => one(vec![("value", serialize(&self.eval(unquote(rest))?))]),
            "empty" => {
                let x = self.eval(unquote(rest))?;
                let w = x.witness();
                one(vec![
                    ("empty", w.is_none().to_string()),
                    ("witness", w.map_or("-".into(), |p| p.to_string())),
                ])
            }
            "witness" => {
                let w = self.eval(unquote(rest))?.witness();
                one(vec![(
                    "witness",
                    w.map_or("none".into(), |p| p.to_string()),
                )])
            }
            "member" => {
                let [p, e] = exactly::<2>(args()?, "member POINT E")?;
                let point = parse_point(&p)?;
                one(vec![(
                    "member",
                    self.eval(&e)?.contains(&point).to_string(),
                )])
            }
            "dims" => one(vec![(
                "dims",
                self.eval(unquote(rest))?.dim_set().to_string(),
            )]),
            "classify" => {
                let atom = self.single_atom(unquote(rest))?;
                one(vec![
                    ("atom", atom.to_string()),
                    ("family", classify(&atom).to_string()),
                ])
            }
            "poz" => {
                let v = in_poz(&self.eval(unquote(rest))?)?;
                let covering: Vec<String> = v.covering.iter().map(|a| a.to_string()).collect();
                let covering = if covering.is_empty() {
                    "-".into()
                } else {
                    covering.join(" | ")
                };
                one(vec![
                    ("in_poz", v.in_poz.to_string()),
                    ("covering", covering),
                ])
            }
            "closure" => {
                let xs = self.eval_list(unquote(rest))?;
                let window = (0..self.options.window).collect();
                let records = s_closure(&xs, &window)
                    .iter()
                    .map(|x| vec![("element", serialize(x))])
                    .collect();
                Ok((records, true))
            }
            "search" => self.search(&args()?),
            "decompose" => self.decompose(&args()?),
            "fuse" => self.fuse(&args()?),
            "recover" => {
                let [b, k, l, branch] = exactly::<4>(args()?, "recover B K L first|second")?;
                let branch = match branch.as_str() {
                    "first" => Branch::First,
                    "second" => Branch::Second,
                    other => return usage(format!("unknown branch `{other}`")),
                };
                let x = recover(&self.element_arg(&b)?, nat(&k)?, nat(&l)?, branch);
                one(vec![("value", serialize(&x))])
            }
            "suite" => self.suite(unquote(rest)),
            "sample" => {
                let [n, seed] = exactly::<2>(args()?, "sample N SEED")?;
                let n = nat(&n)?;
                let seed: u64 = seed
                    .parse()
                    .map_err(|_| CommandError::Usage(format!("bad seed `{seed}`")))?;
                let records = suites::sample_elements(n, seed)
                    .iter()
                    .map(|x| vec![("element", serialize(x))])
                    .collect();
                Ok((records, true))
            }
            other => usage(format!("unknown command `{other}`; try `help`")),
        }
    }

    /// An expression, or a serialized element when it parses as one.
    fn element_arg(&self, src: &str) -> Result<Element> {
        match deserialize(src) {
            Ok(x) => Ok(x),
            Err(_) => self.eval(src),
        }
    }

    fn eval_list(&self, src: &str) -> Result<Vec<Element>> {
        split_top_level(src)
            .into_iter()
            .map(|s| self.eval(s))
            .collect()
    }

    fn single_atom(&self, src: &str) -> Result<Atom> {
        match parse_expr(src)? {
            Term::Atom(a) => Ok(a),
            Term::Sum(t) => Ok(Atom::sum_equals(t)),
            Term::Diagonal(i, j) => Ok(Atom::diagonal(i, j)),
            Term::One => Ok(Atom::full()),
            Term::Zero => Ok(Atom::empty()),
            t => {
                let x = t.eval(&self.env)?;
                let mut cells = x.cells();
                match (cells.next(), cells.next()) {
                    (Some(c), None) if c.len() == 1 => {
                        let l = c.literals().next().expect("one literal");
                        if l.is_positive() {
                            return Ok(l.atom().clone());
                        }
                    }
                    _ => {}
                }
                usage(format!("`{src}` is not a single atom"))
            }
        }
    }

    fn search(&self, args: &[String]) -> Result<(Vec<Record>, bool)> {
        let flags = flags(args, &["--targets", "--cands", "--depth", "--max-items"])?;
        let Some(targets) = flags.get("--targets") else {
            return usage("search needs --targets");
        };
        let targets = self.eval_list(targets)?;
        let mut cands = Vec::new();
        for src in split_top_level(flags.get("--cands").map_or("", |s| s.as_str())) {
            let term = parse_expr(src)?;
            let x = term.eval(&self.env)?;
            cands.push((term, x));
        }
        let mut bounds = SearchBounds::new(self.options.depth, self.options.window);
        if let Some(d) = flags.get("--depth") {
            bounds.depth = nat(d)?;
        }
        if let Some(m) = flags.get("--max-items") {
            bounds.max_items = nat(m)?;
        }
        let report = generator_search(&targets, &cands, bounds);
        let mut records: Vec<Record> = report
            .hits
            .iter()
            .map(|h| match &h.status {
                SearchStatus::Found { witness, depth } => vec![
                    ("status", "found".into()),
                    ("target", serialize(&h.target)),
                    ("witness", witness.to_string()),
                    ("depth", depth.to_string()),
                ],
                SearchStatus::Unknown => vec![
                    ("status", "unknown within bounds".into()),
                    ("target", serialize(&h.target)),
                    ("witness", "-".into()),
                    ("depth", "-".into()),
                ],
            })
            .collect();
        records.push(vec![
            ("explored", report.explored.to_string()),
            ("truncated", report.truncated.to_string()),
        ]);
        Ok((records, true))
    }

    fn decompose(&self, args: &[String]) -> Result<(Vec<Record>, bool)> {
        let Some((g, rest)) = args.split_first() else {
            return usage("decompose G --ys E,...");
        };
        let flags = flags(rest, &["--ys"])?;
        let ys = self.eval_list(flags.get("--ys").map_or("", |s| s.as_str()))?;
        let out = decompose_sigma(&parse_expr(g)?, &ys)?;
        let n = ys.len();
        let mut records: Vec<Record> = out
            .sigma
            .iter()
            .zip(&out.classes)
            .enumerate()
            .map(|(i, (s, c))| {
                let label = if i < n {
                    generator_name(i)
                } else {
                    "rest".into()
                };
                vec![
                    ("sigma", i.to_string()),
                    ("factor", label),
                    ("value", serialize(s)),
                    ("in_poz", c.in_poz.to_string()),
                ]
            })
            .collect();
        records.push(vec![("verified", out.verified.to_string())]);
        Ok((records, out.verified))
    }

    fn fuse(&self, args: &[String]) -> Result<(Vec<Record>, bool)> {
        if args.first().map(String::as_str) == Some("--all") {
            let [_, list] = exactly::<2>(args.to_vec(), "fuse --all E,E,...")?;
            let gens = split_top_level(&list)
                .into_iter()
                .map(|s| self.element_arg(s))
                .collect::<Result<Vec<_>>>()?;
            let out = fuse_all(&gens, &Dilation::above(&gens, gens.len().saturating_sub(1)))?;
            let mut records = vec![vec![("fused", serialize(&out.b))]];
            records.extend(
                out.recovery_terms
                    .iter()
                    .enumerate()
                    .map(|(i, t)| vec![("generator", i.to_string()), ("recovery", t.to_string())]),
            );
            records.push(vec![("verified", out.verified.to_string())]);
            return Ok((records, out.verified));
        }
        let [x, y, k, l] = exactly::<4>(args.to_vec(), "fuse X Y K L")?;
        let cert = certify(
            &self.element_arg(&x)?,
            &self.element_arg(&y)?,
            nat(&k)?,
            nat(&l)?,
        )?;
        Ok((
            vec![vec![
                ("fused", serialize(&cert.b)),
                ("recovered", cert.ok.to_string()),
            ]],
            cert.ok,
        ))
    }

    fn suite(&self, name: &str) -> Result<(Vec<Record>, bool)> {
        let chosen: Vec<_> = if name == "all" {
            suites::SUITES.iter().collect()
        } else {
            match suites::find(name) {
                Some(s) => vec![s],
                None => {
                    let names: Vec<&str> = suites::SUITES.iter().map(|s| s.name).collect();
                    return usage(format!(
                        "unknown suite `{name}`; one of {}",
                        names.join(", ")
                    ));
                }
            }
        };
        let ctx = Context {
            exe: self.exe.as_deref(),
        };
        let mut records = Vec::new();
        let mut all = true;
        for s in chosen {
            let out = s.run(&ctx);
            all &= out.passed;
            records.push(vec![
                ("suite", format!("{}:{}", s.number, s.name)),
                ("status", if out.passed { "PASS" } else { "FAIL" }.into()),
                ("checks", out.checks.to_string()),
                ("seconds", format!("{:.2}", out.elapsed.as_secs_f64())),
                ("title", s.title.into()),
                ("note", out.note),
            ]);
            records.extend(out.failures.into_iter().map(|f| vec![("failure", f)]));
        }
        Ok((records, all))
    }
}

fn unquote(s: &str) -> &str {
    let s = s.trim();
    for q in ['"', '\''] {
        if let Some(inner) = s.strip_prefix(q).and_then(|s| s.strip_suffix(q)) {
            return inner;
        }
    }
    s
}

fn nat(s: &str) -> Result<usize> {
    s.parse()
        .map_err(|_| CommandError::Usage(format!("expected a natural number, found `{s}`")))
}

fn exactly<const N: usize>(args: Vec<String>, shape: &str) -> Result<[String; N]> {
    args.try_into()
        .or_else(|_| usage(format!("expected `{shape}`")))
}

fn flags(args: &[String], known: &[&str]) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    let mut it = args.iter();
    while let Some(flag) = it.next() {
        if !known.contains(&flag.as_str()) {
            return usage(format!(
                "unexpected `{flag}`; expected one of {}",
                known.join(", ")
            ));
        }
        let Some(value) = it.next() else {
            return usage(format!("`{flag}` needs a value"));
        };
        out.insert(flag.clone(), value.clone());
    }
    Ok(out)
}
