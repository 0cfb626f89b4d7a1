use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use latfac::congruence::{finest_imploding_congruence, ReducedInput};
use latfac::enrichment::{enrich_iteratively, enrich_specs, factor_via_enrichment, ContextChoice, Verdict};
use latfac::export::{context_from_json, factor_to_dot, factor_to_json, lattice_to_dot, lattice_to_json};
use latfac::interval::{classify_interval, Classification, FactorKind, FactorWitness, IntervalRelation};
use latfac::tolerance::finest_imploding_block_relation;
use latfac::{cxt, ConceptLattice, Error, FormalContext, Interval, IntervalSpec};
use serde_json::json;

mod verify;

#[derive(Parser)]
#[command(name = "latfac", about = "Factorize concept lattices by imploding intervals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Concept count, irreducibles and basic statistics.
    Show {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Implode one or more intervals.
    Factor {
        input: PathBuf,
        #[arg(long, value_enum)]
        method: Method,
        /// `ext={..}:int={..}`; repeat for several intervals (interval method only).
        #[arg(long = "interval", required = true)]
        intervals: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Exit with status 2 when the factor is not a lattice.
        #[arg(long)]
        require_lattice: bool,
        /// Reduce a non-reduced context first (congruence method).
        #[arg(long)]
        reduce: bool,
        /// Use the generic context instead of the minimal θ-irreducible one (context method).
        #[arg(long)]
        use_generic: bool,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Enrich the incidence by intervals and print the result as .cxt.
    Enrich {
        input: PathBuf,
        #[arg(long = "interval", required = true)]
        intervals: Vec<String>,
        /// Enrich one interval at a time, resolving each in the previous result.
        #[arg(long)]
        iterative: bool,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Cross-check the implementation against brute-force oracles.
    Verify {
        input: PathBuf,
        #[arg(long = "interval")]
        intervals: Vec<String>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Congruence,
    Tolerance,
    Interval,
    Context,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
    Cxt,
}

/// Failure with its exit status.
#[derive(Debug)]
pub struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }

    pub fn refusal(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Budget { .. } => 3,
            Error::NotReduced(_)
            | Error::NotALattice { .. }
            | Error::NotPure
            | Error::NotAnOrder(_)
            | Error::NotSingleInterval(_) => 2,
            _ => 1,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<(), Failure>;

pub fn read_context(path: &Path) -> Result<FormalContext, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let parsed = if path.extension().is_some_and(|e| e == "json") || text.trim_start().starts_with('{') {
        context_from_json(&text)
    } else {
        cxt::parse(&text)
    };
    parsed.map_err(|e| {
        let mut f = Failure::from(e);
        f.message = format!("{}: {}", path.display(), f.message);
        f
    })
}

pub fn parse_specs(specs: &[String]) -> Result<Vec<IntervalSpec>, Failure> {
    specs
        .iter()
        .map(|s| s.parse::<IntervalSpec>().map_err(Failure::from))
        .collect()
}

fn emit(text: &str, output: Option<&Path>) -> Outcome {
    match output {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn names(list: Vec<String>) -> String {
    format!("{{{}}}", list.join(","))
}

fn concept_name(lat: &ConceptLattice, i: usize) -> String {
    let c = lat.concept(i);
    let ctx = lat.context();
    format!("({},{})", names(ctx.object_names(&c.extent)), names(ctx.attribute_names(&c.intent)))
}

fn show(input: &Path, format: Format) -> Outcome {
    let ctx = read_context(input)?;
    let lat = ConceptLattice::new(ctx);
    let text = match format {
        Format::Text => {
            let n = lat.len();
            let mut out = format!(
                "{n} concept{}, {} join-irr, {} meet-irr\n",
                if n == 1 { "" } else { "s" },
                lat.join_irreducibles().len(),
                lat.meet_irreducibles().len()
            );
            let ctx = lat.context();
            let _ = writeln!(
                out,
                "context: {} objects, {} attributes, {} incidences, {}",
                ctx.n_objects(),
                ctx.n_attributes(),
                ctx.incidence_count(),
                if ctx.is_reduced() { "reduced" } else { "not reduced" }
            );
            let height = lat.order().heights().into_iter().max().unwrap_or(0);
            let _ = writeln!(out, "height: {height}, covers: {}", lat.order().covers().len());
            for i in 0..lat.len() {
                let _ = writeln!(out, "{i}: {}", concept_name(&lat, i));
            }
            out
        }
        Format::Json => serde_json::to_string_pretty(&lattice_to_json(&lat)).expect("serializable") + "\n",
        Format::Dot => lattice_to_dot(&lat),
        Format::Cxt => cxt::to_string(lat.context()),
    };
    emit(&text, None)
}

struct FactorArgs {
    method: Method,
    intervals: Vec<String>,
    format: Format,
    require_lattice: bool,
    reduce: bool,
    use_generic: bool,
    output: Option<PathBuf>,
}

fn validate(args: &FactorArgs) -> Outcome {
    if args.method != Method::Interval && args.intervals.len() != 1 {
        return Err(Failure::input("this method takes exactly one --interval"));
    }
    if args.reduce && args.method != Method::Congruence {
        return Err(Failure::input("--reduce applies to the congruence method only"));
    }
    if args.use_generic && args.method != Method::Context {
        return Err(Failure::input("--use-generic applies to the context method only"));
    }
    Ok(())
}

fn factor(input: &Path, args: FactorArgs) -> Outcome {
    validate(&args)?;
    let specs = parse_specs(&args.intervals)?;
    let ctx = read_context(input)?;
    let lat = ConceptLattice::new(ctx);
    let ivs: Vec<Interval> = specs.iter().map(|s| s.resolve_in(&lat)).collect::<Result<_, _>>()?;
    let (text, is_lattice) = match args.method {
        Method::Congruence => congruence(&lat, ivs[0], args.reduce, args.format)?,
        Method::Tolerance => tolerance(&lat, ivs[0], args.format)?,
        Method::Interval => interval(&lat, &ivs, args.format)?,
        Method::Context => context_method(&lat, ivs[0], args.use_generic, args.format)?,
    };
    emit(&text, args.output.as_deref())?;
    if args.require_lattice && !is_lattice {
        return Err(Failure::refusal("result is not a lattice"));
    }
    Ok(())
}

fn congruence(lat: &ConceptLattice, s: Interval, reduce: bool, format: Format) -> Result<(String, bool), Failure> {
    let mode = if reduce {
        ReducedInput::ReduceInternally
    } else {
        ReducedInput::Strict
    };
    let res = finest_imploding_congruence(lat, s, mode)?;
    if res.is_trivial() {
        eprintln!("warning: trivial congruence");
    }
    let ctx = &res.context;
    let sub = &res.compatible_subcontext;
    let text = match format {
        Format::Text => {
            let mut out = String::from("method: congruence\n");
            let _ = writeln!(
                out,
                "bounds: H={} N={}",
                names(ctx.object_names(&res.bound_objects)),
                names(ctx.attribute_names(&res.bound_attributes))
            );
            let _ = writeln!(
                out,
                "compatible subcontext: [{},{}]",
                names(ctx.object_names(&sub.objects)),
                names(ctx.attribute_names(&sub.attributes))
            );
            let n = res.factor.len();
            let _ = writeln!(out, "factor: {n} element{}", if n == 1 { "" } else { "s" });
            for (k, class) in res.classes().iter().enumerate() {
                let members: Vec<String> = class.iter().map(|&c| concept_name(lat, c)).collect();
                let _ = writeln!(out, "class {k}: {}", members.join(" "));
            }
            out
        }
        Format::Json => {
            let v = json!({
                "method": "congruence",
                "bounds": {
                    "objects": ctx.object_names(&res.bound_objects),
                    "attributes": ctx.attribute_names(&res.bound_attributes),
                },
                "compatible_subcontext": {
                    "objects": ctx.object_names(&sub.objects),
                    "attributes": ctx.attribute_names(&sub.attributes),
                },
                "factor": lattice_to_json(&res.factor),
                "class_map": res.class_map,
                "trivial": res.is_trivial(),
            });
            serde_json::to_string_pretty(&v).expect("serializable") + "\n"
        }
        Format::Dot => lattice_to_dot(&res.factor),
        Format::Cxt => cxt::to_string(res.factor.context()),
    };
    Ok((text, true))
}

fn tolerance(lat: &ConceptLattice, s: Interval, format: Format) -> Result<(String, bool), Failure> {
    let res = finest_imploding_block_relation(lat, s)?;
    let ctx = lat.context();
    let delta: Vec<(String, String)> = res
        .block
        .delta()
        .into_iter()
        .map(|(g, m)| (ctx.objects()[g].clone(), ctx.attributes()[m].clone()))
        .collect();
    let text = match format {
        Format::Text => {
            let mut out = String::from("method: tolerance\n");
            let _ = writeln!(out, "added incidences: {}", delta.len());
            for (g, m) in &delta {
                let _ = writeln!(out, "  {g} {m}");
            }
            let _ = writeln!(out, "factor: {} blocks", res.factor.len());
            for (k, b) in res.blocks(lat).iter().enumerate() {
                let _ = writeln!(
                    out,
                    "block {k}: [{}, {}]",
                    concept_name(lat, b.bottom),
                    concept_name(lat, b.top)
                );
            }
            out
        }
        Format::Json => {
            let v = json!({
                "method": "tolerance",
                "added": delta.iter().map(|(g, m)| [g, m]).collect::<Vec<_>>(),
                "blocks": res.blocks(lat).iter().map(|b| [b.bottom, b.top]).collect::<Vec<_>>(),
                "factor": lattice_to_json(&res.factor),
                "lower_map": res.lower_map,
                "upper_map": res.upper_map,
            });
            serde_json::to_string_pretty(&v).expect("serializable") + "\n"
        }
        Format::Dot => lattice_to_dot(&res.factor),
        Format::Cxt => cxt::to_string(&res.block.relation),
    };
    Ok((text, true))
}

fn interval(lat: &ConceptLattice, ivs: &[Interval], format: Format) -> Result<(String, bool), Failure> {
    let rel = IntervalRelation::new(lat.order(), ivs)?;
    let f = rel.factorize();
    let is_lattice = f.kind == FactorKind::Lattice;
    let classification = match ivs {
        [s] => Some(classify_interval(lat.order(), *s)?),
        _ => None,
    };
    let text = match format {
        Format::Text => {
            let mut out = String::from("method: interval\n");
            let _ = writeln!(out, "kind: {}", f.kind.as_str());
            let _ = writeln!(out, "factor: {} classes", f.len());
            if let Some(c) = &classification {
                let _ = writeln!(out, "interval: {}", classification_text(lat, c));
            }
            match &f.witness {
                Some(FactorWitness::PenroseCrown(cycle)) => {
                    let _ = writeln!(out, "penrose crown through intervals {cycle:?}");
                }
                Some(FactorWitness::NotALattice(check)) => {
                    let _ = writeln!(out, "not a lattice: {check:?}");
                }
                None => {}
            }
            for (k, class) in f.classes.iter().enumerate() {
                if class.len() > 1 {
                    let members: Vec<String> = class.iter().map(|&c| concept_name(lat, c)).collect();
                    let _ = writeln!(out, "class {}: {}", f.labels[k], members.join(" "));
                }
            }
            out
        }
        Format::Json => {
            let mut v = factor_to_json(&f, lat.order());
            if let Some(c) = &classification {
                v["interval"] = json!(if c.is_pure() { "pure" } else { "nested" });
            }
            serde_json::to_string_pretty(&v).expect("serializable") + "\n"
        }
        Format::Dot => factor_to_dot(&f),
        Format::Cxt => {
            let p = f.to_poset()?;
            cxt::to_string(&p.generic_context()?)
        }
    };
    Ok((text, is_lattice))
}

fn classification_text(lat: &ConceptLattice, c: &Classification) -> String {
    match c {
        Classification::Pure => "pure".into(),
        Classification::Nested { x, y, a, v } => format!(
            "nested (x={}, y={}, a={}, v={})",
            concept_name(lat, *x),
            concept_name(lat, *y),
            concept_name(lat, *a),
            concept_name(lat, *v)
        ),
    }
}

fn context_method(lat: &ConceptLattice, s: Interval, generic: bool, format: Format) -> Result<(String, bool), Failure> {
    let choice = if generic {
        ContextChoice::Generic
    } else {
        ContextChoice::Minimal
    };
    let res = factor_via_enrichment(lat.order(), s, choice)?;
    let is_lattice = res.verdict == Verdict::IsomorphicToFactor;
    let text = match format {
        Format::Text => {
            let mut out = String::from("method: context\n");
            let _ = writeln!(
                out,
                "context: {} objects, {} attributes",
                res.context.objects.len(),
                res.context.attributes.len()
            );
            let _ = writeln!(out, "enriched concepts: {}", res.lattice.len());
            let _ = writeln!(out, "factor: {} classes, {}", res.factor.len(), res.factor.kind.as_str());
            let _ = writeln!(out, "verdict: {}", res.verdict.as_str());
            out
        }
        Format::Json => {
            let v = json!({
                "method": "context",
                "objects": res.context.context.objects(),
                "attributes": res.context.context.attributes(),
                "enriched": lattice_to_json(&res.lattice),
                "factor_kind": res.factor.kind.as_str(),
                "verdict": res.verdict.as_str(),
            });
            serde_json::to_string_pretty(&v).expect("serializable") + "\n"
        }
        Format::Dot => lattice_to_dot(&res.lattice),
        Format::Cxt => cxt::to_string(&res.enriched.context),
    };
    if let Verdict::Inconsistent(m) = &res.verdict {
        eprintln!("warning: {m}");
    }
    Ok((text, is_lattice))
}

fn enrich(input: &Path, intervals: &[String], iterative: bool, output: Option<&Path>) -> Outcome {
    let specs = parse_specs(intervals)?;
    let ctx = read_context(input)?;
    let e = if iterative {
        enrich_iteratively(&ctx, &specs)?
    } else {
        enrich_specs(&ctx, &specs)?
    };
    for (i, j) in &e.overlapping {
        eprintln!("warning: intervals {} and {} overlap", specs[*i], specs[*j]);
    }
    let mut delta = String::new();
    for (g, m) in e.delta() {
        let _ = writeln!(delta, "added {} {}", ctx.objects()[g], ctx.attributes()[m]);
    }
    let cxt_text = cxt::to_string(&e.context);
    match output {
        Some(p) => {
            emit(&cxt_text, Some(p))?;
            print!("{delta}");
        }
        None => {
            print!("{cxt_text}");
            eprint!("{delta}");
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Show { input, format } => show(&input, format),
        Command::Factor {
            input,
            method,
            intervals,
            format,
            require_lattice,
            reduce,
            use_generic,
            output,
        } => factor(
            &input,
            FactorArgs {
                method,
                intervals,
                format,
                require_lattice,
                reduce,
                use_generic,
                output,
            },
        ),
        Command::Enrich {
            input,
            intervals,
            iterative,
            output,
        } => enrich(&input, &intervals, iterative, output.as_deref()),
        Command::Verify { input, intervals } => verify::run(&input, &intervals),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
