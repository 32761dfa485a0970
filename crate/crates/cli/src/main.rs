use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use nbase::compose::{compose, decompose_head, normalize, shuffle, GammaSequence, Placement, Strategy};
use nbase::element::PlainElement;
use nbase::enumerate::{binary_elements, enumerate_with, free_ea2_component_count};
use nbase::error::Error;
use nbase::morphisms::{
    apply_one, apply_two, complete_square, enumerate_one, enumerate_two, induced_two_on_composition,
    OneMor2, TwoMor2,
};
use nbase::ordinal::{self, OrdinalNF};
use nbase::par::{with_jobs, Exec};
use nbase::presentation::{
    gi_presentation, symmetric_presentation, todd_coxeter, tree_presentation, verify_with, Presentation,
    MAX_COSETS,
};
use nbase::render::{render, Format};
use nbase::selftest::{self, Size, Suite};
use nbase::unital::{r_compose, RElement};

#[derive(Parser)]
#[command(name = "nbase", version, about = "Plain n-bases: compose, normalize, morphisms, presentations, ordinals")]
struct Cli {
    /// Emit JSON instead of plain lines.
    #[arg(long, global = true)]
    json: bool,
    /// Add human-oriented drawings and labels.
    #[arg(long, global = true)]
    pretty: bool,
    /// Worker threads for parallel work.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Level of element arguments; required for bare integers.
    #[arg(long, global = true)]
    level: Option<u32>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check an element literal and print its canonical form.
    Validate { x: String },
    /// Compose `x ∘_i y`.
    Compose {
        x: String,
        i: usize,
        y: String,
        /// Allow `0` and `!e` (levels 1 and 2 only).
        #[arg(long)]
        unital: bool,
    },
    /// Bring a raw factor sequence to canonical form.
    Normalize {
        seq: String,
        /// left, right, or random:SEED
        #[arg(long, default_value = "left")]
        strategy: String,
    },
    /// The shuffle maps of `x ∘_i y`.
    Shuffle { x: String, i: usize, y: String },
    /// Slots, total arity and entry count.
    Fg { x: String },
    /// Head decomposition.
    Head { x: String },
    #[command(subcommand)]
    Ord(OrdCmd),
    #[command(subcommand)]
    Group(GroupCmd),
    /// List elements within bounds.
    Enum(EnumArgs),
    #[command(subcommand)]
    Mor(MorCmd),
    /// Draw an element of level at most 3.
    Render {
        x: String,
        #[arg(long, default_value = "ascii")]
        format: String,
    },
    /// Run a property suite, or all of them.
    Selftest {
        #[arg(default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "small")]
        size: String,
    },
}

#[derive(Subcommand)]
enum OrdCmd {
    /// Evaluate an element to an ordinal.
    Eval {
        x: String,
        /// Comma-separated ordinals, one per entry.
        #[arg(long)]
        alphas: Option<String>,
        /// Use the slot-wise recursion at level 2 too.
        #[arg(long)]
        general: bool,
    },
    /// An element of the given level evaluating to the ordinal.
    Encode { beta: String },
    Cmp { a: String, b: String },
    Add { a: String, b: String },
}

#[derive(Args)]
struct GroupSource {
    /// Yang-Baxter presentation of the symmetric group on N letters.
    #[arg(long)]
    sym: Option<usize>,
    /// The five-node presentation with generators a, b, c, d.
    #[arg(long)]
    gi: bool,
    /// A binary level-2 element.
    x: Option<String>,
}

#[derive(Subcommand)]
enum GroupCmd {
    Present {
        #[command(flatten)]
        src: GroupSource,
        /// Print relators as GAP words.
        #[arg(long)]
        gap: bool,
    },
    Order {
        #[command(flatten)]
        src: GroupSource,
        #[arg(long, default_value_t = MAX_COSETS)]
        max_cosets: usize,
    },
    /// Realize a tree presentation by node transpositions.
    Verify {
        x: String,
        #[arg(long, default_value_t = MAX_COSETS)]
        max_cosets: usize,
    },
}

#[derive(Args)]
struct EnumArgs {
    #[arg(long, default_value_t = 3)]
    max_factors: usize,
    #[arg(long, default_value_t = 3)]
    max_arity: u32,
    /// Binary elements with K nodes (K+1 leaves) instead of a bounded sweep.
    #[arg(long, value_name = "K")]
    binary: Option<usize>,
    /// With --binary, read K as a leaf count.
    #[arg(long, requires = "binary")]
    leaves: bool,
    /// Component count of the free algebra on S generators in arity N.
    #[arg(long, num_args = 2, value_names = ["S", "N"])]
    components: Option<Vec<u64>>,
    #[arg(long)]
    count_only: bool,
}

#[derive(Subcommand)]
enum MorCmd {
    /// Prong permutations, e.g. --perms '[[2,1],[1,2]]'.
    Apply1 {
        x: String,
        #[arg(long)]
        perms: String,
    },
    /// Node permutation, e.g. --sigma '[2,1]'.
    Apply2 {
        x: String,
        #[arg(long)]
        sigma: String,
    },
    /// Close a {1}- and a {2}-morphism out of x into a square.
    Square {
        x: String,
        #[arg(long)]
        perms: String,
        #[arg(long)]
        sigma: String,
    },
    /// The node permutation induced on x ∘_i y.
    Induce {
        x: String,
        i: usize,
        y: String,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// Every morphism of a kind out of x.
    List {
        x: String,
        #[arg(long, default_value = "two")]
        kind: String,
    },
}

enum Failure {
    Domain(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Out = Result<Output, Failure>;

/// Plain text and the JSON mirror of one command's result.
struct Output {
    text: String,
    json: Value,
    ok: bool,
}

impl Output {
    fn new(text: impl Into<String>, json: Value) -> Self {
        Output {
            text: text.into(),
            json,
            ok: true,
        }
    }
}

fn usage(m: impl Into<String>) -> Failure {
    Failure::Usage(m.into())
}

struct Ctx {
    level: Option<u32>,
    pretty: bool,
}

impl Ctx {
    /// Parses a literal or its JSON mirror. Bare integers need an explicit level.
    fn element(&self, text: &str) -> Result<PlainElement, Failure> {
        let t = text.trim();
        let x = if t.starts_with('{') {
            let v: Value = serde_json::from_str(t).map_err(|e| Error::Parse(format!("json: {e}")))?;
            PlainElement::from_json(&v)?
        } else if let Some(l) = self.level {
            PlainElement::parse_at(t, l)?
        } else if !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit()) {
            return Err(usage(format!("'{t}' needs --level to fix its level")));
        } else {
            PlainElement::parse(t)?
        };
        if let Some(l) = self.level {
            if x.level() != l {
                return Err(Error::LevelMismatch(format!("{x} has level {}, expected {l}", x.level())).into());
            }
        }
        Ok(x)
    }

    fn with_drawing(&self, text: String, x: &PlainElement) -> String {
        match (self.pretty, render(x, Format::Ascii)) {
            (true, Ok(d)) => format!("{text}\n{}", d.trim_end()),
            _ => text,
        }
    }
}

fn ord(text: &str) -> Result<OrdinalNF, Failure> {
    Ok(ordinal::parse(text)?)
}

fn perm_list(text: &str) -> Result<Vec<usize>, Failure> {
    serde_json::from_str(text).map_err(|e| usage(format!("expected a list like [2,1]: {e}")))
}

fn perm_lists(text: &str) -> Result<Vec<Vec<usize>>, Failure> {
    serde_json::from_str(text).map_err(|e| usage(format!("expected lists like [[2,1],[1]]: {e}")))
}

fn joined(v: &[usize]) -> String {
    v.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(" ")
}

fn pairs(v: &[(usize, usize)]) -> String {
    v.iter().map(|(a, b)| format!("{a}->{b}")).collect::<Vec<_>>().join(" ")
}

fn one_json(f: &OneMor2) -> Value {
    json!({
        "source": f.source.to_string(),
        "target": f.target.to_string(),
        "node_perms": f.node_perms,
        "leaf_perm": f.leaf_perm,
        "node_relabel": f.node_relabel,
    })
}

fn two_json(g: &TwoMor2) -> Value {
    json!({ "source": g.source.to_string(), "target": g.target.to_string(), "sigma": g.sigma })
}

fn one_text(f: &OneMor2) -> String {
    format!(
        "target: {}\nleaf_perm: {}\nnode_relabel: {}",
        f.target,
        joined(&f.leaf_perm),
        joined(&f.node_relabel)
    )
}

fn two_text(g: &TwoMor2) -> String {
    format!("target: {}\nsigma: {}", g.target, joined(&g.sigma))
}

fn strategy(s: &str) -> Result<Strategy, Failure> {
    match s {
        "left" => Ok(Strategy::LeftFirst),
        "right" => Ok(Strategy::RightFirst),
        _ => match s.strip_prefix("random:").map(str::parse) {
            Some(Ok(seed)) => Ok(Strategy::Random(seed)),
            _ => Err(usage(format!("unknown strategy '{s}'"))),
        },
    }
}

fn group_source(ctx: &Ctx, src: &GroupSource) -> Result<Presentation, Failure> {
    match (src.sym, src.gi, &src.x) {
        (Some(n), false, None) => Ok(symmetric_presentation(n)?),
        (None, true, None) => Ok(gi_presentation()),
        (None, false, Some(x)) => Ok(tree_presentation(&ctx.element(x)?)?.0),
        _ => Err(usage("give exactly one of --sym N, --gi, or an element")),
    }
}

fn run_ord(ctx: &Ctx, cmd: &OrdCmd) -> Out {
    match cmd {
        OrdCmd::Eval { x, alphas, general } => {
            let z = ctx.element(x)?;
            let v = match alphas {
                Some(a) => {
                    let list = a.split(',').map(ord).collect::<Result<Vec<_>, _>>()?;
                    ordinal::eval_phin(&z, Some(&list))?
                }
                None if z.level() == 2 && !general => ordinal::eval_phi2(&z)?,
                None => ordinal::eval_phin(&z, None)?,
            };
            Ok(Output::new(v.to_string(), json!(v.to_string())))
        }
        OrdCmd::Encode { beta } => {
            let n = ctx.level.ok_or_else(|| usage("encode needs --level"))?;
            let z = ordinal::encode(&ord(beta)?, n)?;
            Ok(Output::new(ctx.with_drawing(z.to_string(), &z), z.to_json()))
        }
        OrdCmd::Cmp { a, b } => {
            let c = match ordinal::cmp(&ord(a)?, &ord(b)?) {
                std::cmp::Ordering::Less => "LT",
                std::cmp::Ordering::Equal => "EQ",
                std::cmp::Ordering::Greater => "GT",
            };
            Ok(Output::new(c, json!(c)))
        }
        OrdCmd::Add { a, b } => {
            let s = ordinal::add(&ord(a)?, &ord(b)?);
            Ok(Output::new(s.to_string(), json!(s.to_string())))
        }
    }
}

fn run_group(ctx: &Ctx, cmd: &GroupCmd) -> Out {
    match cmd {
        GroupCmd::Present { src, gap } => {
            let p = group_source(ctx, src)?;
            let text = if *gap { p.gap_relators().join("\n") } else { p.to_string() };
            Ok(Output::new(
                text,
                json!({ "generators": p.names, "relators": p.gap_relators() }),
            ))
        }
        GroupCmd::Order { src, max_cosets } => {
            let p = group_source(ctx, src)?;
            let n = todd_coxeter(&p, *max_cosets)?.order();
            Ok(Output::new(n.to_string(), json!(n)))
        }
        GroupCmd::Verify { x, max_cosets } => {
            let r = verify_with(&ctx.element(x)?, *max_cosets)?;
            let edges: Vec<String> = r.transpositions.iter().map(|(a, b)| format!("({a} {b})")).collect();
            let text = format!(
                "nodes: {}\ntranspositions: {}\nrelators_hold: {}\ngenerated_order: {}\npresented_order: {}\ntwo_morphisms: {}\nisomorphic: {}",
                r.nodes,
                edges.join(" "),
                r.relators_hold,
                r.generated_order,
                r.presented_order,
                r.two_morphisms,
                r.isomorphic
            );
            let mut out = Output::new(
                text,
                json!({
                    "nodes": r.nodes,
                    "transpositions": r.transpositions,
                    "relators_hold": r.relators_hold,
                    "generated_order": r.generated_order,
                    "presented_order": r.presented_order,
                    "two_morphisms": r.two_morphisms,
                    "isomorphic": r.isomorphic,
                }),
            );
            out.ok = r.isomorphic;
            Ok(out)
        }
    }
}

fn run_enum(ctx: &Ctx, a: &EnumArgs, exec: Exec) -> Out {
    if let Some(c) = &a.components {
        let k = free_ea2_component_count(c[0], c[1] as usize)?;
        let text = format!(
            "catalan: {}\nfactorial: {}\nmultisets: {}\nproduct: {}",
            k.catalan, k.factorial, k.multisets, k.product
        );
        return Ok(Output::new(
            text,
            json!({
                "catalan": k.catalan,
                "factorial": k.factorial,
                "multisets": k.multisets,
                "product": k.product.to_string(),
            }),
        ));
    }
    let xs = match a.binary {
        Some(k) => {
            let nodes = if a.leaves { k.checked_sub(1).filter(|&n| n > 0) } else { Some(k) };
            binary_elements(nodes.ok_or_else(|| usage("a binary tree needs at least 2 leaves"))?)
        }
        None => {
            let n = ctx.level.ok_or_else(|| usage("enum needs --level or --binary"))?;
            enumerate_with(n, a.max_factors, a.max_arity, exec)
        }
    };
    if a.count_only {
        return Ok(Output::new(xs.len().to_string(), json!(xs.len())));
    }
    let text = xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("\n");
    let v: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    Ok(Output::new(text, json!(v)))
}

fn run_mor(ctx: &Ctx, cmd: &MorCmd) -> Out {
    let no_morphism = |x: &PlainElement, s: &[usize]| {
        Failure::Domain(Error::MatchViolation(format!(
            "NoMorphism: {s:?} does not give an element from {x}"
        )))
    };
    match cmd {
        MorCmd::Apply1 { x, perms } => {
            let f = apply_one(&ctx.element(x)?, &perm_lists(perms)?)?;
            Ok(Output::new(ctx.with_drawing(one_text(&f), &f.target), one_json(&f)))
        }
        MorCmd::Apply2 { x, sigma } => {
            let x = ctx.element(x)?;
            let s = perm_list(sigma)?;
            let g = apply_two(&x, &s)?.ok_or_else(|| no_morphism(&x, &s))?;
            Ok(Output::new(ctx.with_drawing(two_text(&g), &g.target), two_json(&g)))
        }
        MorCmd::Square { x, perms, sigma } => {
            let x = ctx.element(x)?;
            let f = apply_one(&x, &perm_lists(perms)?)?;
            let s = perm_list(sigma)?;
            let g = apply_two(&x, &s)?.ok_or_else(|| no_morphism(&x, &s))?;
            let sq = complete_square(&f, &g)?;
            let text = format!(
                "corners: {} {} {} {}\nf2_perms: {}\ng2_sigma: {}\ncommutes: {}",
                x,
                f.target,
                g.target,
                sq.f2.target,
                serde_json::to_string(&sq.f2.node_perms).unwrap(),
                joined(&sq.g2.sigma),
                sq.commutes()
            );
            Ok(Output::new(
                text,
                json!({
                    "f": one_json(&sq.f),
                    "g": two_json(&sq.g),
                    "f2": one_json(&sq.f2),
                    "g2": two_json(&sq.g2),
                    "commutes": sq.commutes(),
                }),
            ))
        }
        MorCmd::Induce { x, i, y, f, g } => {
            let (x, y) = (ctx.element(x)?, ctx.element(y)?);
            let (sf, sg) = (perm_list(f)?, perm_list(g)?);
            let f = apply_two(&x, &sf)?.ok_or_else(|| no_morphism(&x, &sf))?;
            let g = apply_two(&y, &sg)?.ok_or_else(|| no_morphism(&y, &sg))?;
            let h = induced_two_on_composition(&x, *i, &y, &f, &g)?;
            Ok(Output::new(
                format!("source: {}\n{}", h.source, two_text(&h)),
                two_json(&h),
            ))
        }
        MorCmd::List { x, kind } => {
            let x = ctx.element(x)?;
            let (text, v): (Vec<String>, Vec<Value>) = match kind.as_str() {
                "one" => enumerate_one(&x)?
                    .iter()
                    .map(|f| (format!("{} {}", serde_json::to_string(&f.node_perms).unwrap(), f.target), one_json(f)))
                    .unzip(),
                "two" => enumerate_two(&x)?
                    .iter()
                    .map(|g| (format!("{} {}", serde_json::to_string(&g.sigma).unwrap(), g.target), two_json(g)))
                    .unzip(),
                _ => return Err(usage(format!("unknown kind '{kind}', expected one or two"))),
            };
            Ok(Output::new(text.join("\n"), json!(v)))
        }
    }
}

fn run_selftest(suite: &str, seed: u64, size: &str, exec: Exec) -> Out {
    let size: Size = size.parse().map_err(|_| usage(format!("unknown size '{size}'")))?;
    let suites: Vec<Suite> = if suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![suite.parse().map_err(|_| usage(format!("unknown suite '{suite}'")))?]
    };
    let reports: Vec<_> = suites.into_iter().map(|s| selftest::run(s, seed, size, exec)).collect();
    let text = reports.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("\n");
    let mut out = Output::new(text, json!(reports.iter().map(|r| r.to_json()).collect::<Vec<_>>()));
    out.ok = reports.iter().all(|r| r.passed());
    Ok(out)
}

fn run(cli: &Cli) -> Out {
    let ctx = Ctx {
        level: cli.level,
        pretty: cli.pretty,
    };
    let exec = if cli.jobs == Some(1) { Exec::Sequential } else { Exec::default() };
    match &cli.cmd {
        Cmd::Validate { x } => {
            let x = ctx.element(x)?;
            Ok(Output::new(ctx.with_drawing(x.to_string(), &x), x.to_json()))
        }
        Cmd::Compose { x, i, y, unital } if *unital => {
            // The argument may sit a level lower: `0` caps a leaf of a tree.
            let x = RElement::parse(x)?;
            if let Some(l) = ctx.level.filter(|&l| l != x.level()) {
                return Err(Error::LevelMismatch(format!("{x} is not at level {l}")).into());
            }
            let z = r_compose(&x, *i, &RElement::parse(y)?)?;
            Ok(Output::new(z.to_string(), json!(z.to_string())))
        }
        Cmd::Compose { x, i, y, .. } => {
            let (z, sh) = compose(&ctx.element(x)?, *i, &ctx.element(y)?)?;
            let text = if ctx.pretty {
                ctx.with_drawing(
                    format!("{z}\nphi: {}\npsi: {}", pairs(&sh.phi_pairs()), pairs(&sh.psi_pairs())),
                    &z,
                )
            } else {
                z.to_string()
            };
            Ok(Output::new(
                text,
                json!({ "result": z.to_json(), "literal": z.to_string(), "phi": sh.phi_pairs(), "psi": sh.psi_pairs() }),
            ))
        }
        Cmd::Normalize { seq, strategy: s } => {
            let g = GammaSequence::parse(seq)?;
            let (z, perm) = normalize(&g, strategy(s)?)?;
            Ok(Output::new(
                format!("{z}\npositions: {}", joined(&perm)),
                json!({ "result": z.to_string(), "positions": perm }),
            ))
        }
        Cmd::Shuffle { x, i, y } => {
            let sh = shuffle(&ctx.element(x)?, *i, &ctx.element(y)?)?;
            Ok(Output::new(
                format!("phi: {}\npsi: {}", pairs(&sh.phi_pairs()), pairs(&sh.psi_pairs())),
                json!({ "phi": sh.phi_pairs(), "psi": sh.psi_pairs() }),
            ))
        }
        Cmd::Fg { x } => {
            let x = ctx.element(x)?;
            let f: Vec<String> = x.slots_f()?.iter().map(|s| s.to_string()).collect();
            let g = x.total_g()?;
            Ok(Output::new(
                format!("F: {}\nG: {g}\nm: {}", f.join(" "), x.m()),
                json!({ "F": f, "G": g.to_string(), "m": x.m() }),
            ))
        }
        Cmd::Head { x } => {
            let h = decompose_head(&ctx.element(x)?)?;
            let mut lines = vec![format!("head: {}", h.head)];
            lines.extend(h.attachments.iter().map(|(s, sub)| format!("slot {s}: {sub}")));
            let placement: Vec<Value> = h
                .placement
                .iter()
                .map(|p| match p {
                    Placement::Head => json!("head"),
                    Placement::Sub(a, pos) => json!([a + 1, pos]),
                })
                .collect();
            Ok(Output::new(
                lines.join("\n"),
                json!({
                    "head": h.head.to_string(),
                    "attachments": h.attachments.iter().map(|(s, sub)| json!([s, sub.to_string()])).collect::<Vec<_>>(),
                    "placement": placement,
                }),
            ))
        }
        Cmd::Ord(c) => run_ord(&ctx, c),
        Cmd::Group(c) => run_group(&ctx, c),
        Cmd::Enum(a) => run_enum(&ctx, a, exec),
        Cmd::Mor(c) => run_mor(&ctx, c),
        Cmd::Render { x, format } => {
            let f: Format = format.parse().map_err(|_| usage(format!("unknown format '{format}'")))?;
            let x = ctx.element(x)?;
            let d = render(&x, f)?;
            Ok(Output::new(d.trim_end(), json!(d)))
        }
        Cmd::Selftest { suite, seed, size } => run_selftest(suite, *seed, size, exec),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match with_jobs(cli.jobs, || run(&cli)) {
        Ok(out) => {
            if cli.json {
                println!("{}", out.json);
            } else if !out.text.is_empty() {
                println!("{}", out.text);
            }
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(Failure::Domain(e)) => {
            if cli.json {
                println!("{}", json!({ "error": e.kind(), "message": e.to_string() }));
            }
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("usage error: {m}");
            ExitCode::from(2)
        }
    }
}
