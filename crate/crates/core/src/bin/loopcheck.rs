use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use loopcheck::error::{PropertyError, SearchError};
use loopcheck::isotopy::{principal_isotope, IsotopeSpec};
use loopcheck::loopfile::{self, LoopFile, NamedLoop};
use loopcheck::properties::{self, Method, PropertyReport};
use loopcheck::search::{self, Mode, SearchQuery};
use loopcheck::term::{self, registry, Identity};
use loopcheck::theoremlab::{self, ClaimReport, Confidence};

#[derive(Parser)]
#[command(name = "loopcheck", version, about = "Finite loop property checker")]
struct Cli {
    /// Worker threads for parallel sweeps (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// How universality properties are decided.
    #[arg(long, global = true, value_enum, default_value_t = MethodArg::Identity)]
    method: MethodArg,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    /// One JSON object per line.
    Structured,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Identity,
    Bruteforce,
    Both,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Identity => Method::Identity,
            MethodArg::Bruteforce => Method::Bruteforce,
            MethodArg::Both => Method::Both,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exhaustive,
    First,
}

#[derive(Subcommand)]
enum Command {
    /// Check named properties of one loop.
    Check {
        file: PathBuf,
        #[arg(value_name = "LOOP")]
        name: String,
        #[arg(required = true)]
        properties: Vec<String>,
    },
    /// Check an identity such as "x*(y*z) = (x*y)*z".
    Identity {
        file: PathBuf,
        #[arg(value_name = "LOOP")]
        name: String,
        expression: String,
    },
    /// Print a principal isotope as a loop file. Give U and V for the full
    /// isotope, or one of --left / --right.
    Isotope {
        file: PathBuf,
        #[arg(value_name = "LOOP")]
        name: String,
        #[arg(requires = "v", conflicts_with_all = ["left", "right"])]
        u: Option<usize>,
        v: Option<usize>,
        /// Left principal isotope with this v.
        #[arg(long, value_name = "V", conflicts_with = "right")]
        left: Option<usize>,
        /// Right principal isotope with this u.
        #[arg(long, value_name = "U")]
        right: Option<usize>,
    },
    /// Search reduced loops of one order.
    Search {
        #[arg(long)]
        order: usize,
        #[arg(long, value_delimiter = ',')]
        require: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        forbid: Vec<String>,
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
        mode: ModeArg,
        /// Print only the number of reduced loops of this order.
        #[arg(long, conflicts_with_all = ["require", "forbid", "limit"])]
        count: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Hits are named PREFIX1, PREFIX2, ...
        #[arg(long, default_value = "hit")]
        prefix: String,
    },
    /// Run the claim catalog over every *.loop file in a directory.
    Verify {
        dir: PathBuf,
        /// Restrict to these claim ids.
        #[arg(long)]
        claim: Vec<String>,
    },
    /// Print the identity registry and the claim catalog.
    Catalog,
}

/// Exit statuses.
const HOLDS: u8 = 0;
const FALSIFIED: u8 = 1;
const USAGE: u8 = 2;
const INTERNAL: u8 = 3;

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Self {
        Failure {
            code: USAGE,
            message: message.to_string(),
        }
    }
}

impl From<PropertyError> for Failure {
    fn from(e: PropertyError) -> Self {
        let code = match e {
            PropertyError::MethodDisagreement { .. } => INTERNAL,
            PropertyError::UnknownProperty(_) => USAGE,
            PropertyError::NotUnital { .. } => INTERNAL,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<SearchError> for Failure {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::Property(p) => p.into(),
            other => Failure::usage(other),
        }
    }
}

struct Out {
    format: Format,
    buf: String,
}

impl Out {
    fn text(&mut self, line: impl AsRef<str>) {
        if self.format == Format::Text {
            self.buf.push_str(line.as_ref());
            self.buf.push('\n');
        }
    }

    fn record(&mut self, v: Value) {
        if self.format == Format::Structured {
            let _ = writeln!(self.buf, "{v}");
        }
    }
}

fn load(file: &Path) -> Result<LoopFile, Failure> {
    loopfile::read_loop_file(file).map_err(Failure::usage)
}

fn find<'a>(f: &'a LoopFile, file: &Path, name: &str) -> Result<&'a NamedLoop, Failure> {
    f.get(name).ok_or_else(|| {
        Failure::usage(format!(
            "{}: no loop named {name:?} (available: {})",
            file.display(),
            f.names().join(", ")
        ))
    })
}

fn assignment_text(a: &[(String, usize)]) -> String {
    a.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(", ")
}

fn report_text(loop_name: &str, r: &PropertyReport) -> String {
    let verdict = if r.holds { "holds" } else { "fails" };
    let method = serde_json::to_value(r.method).unwrap_or_default();
    let mut s = format!("{loop_name}: {} {verdict} [{}]", r.property, method.as_str().unwrap_or(""));
    if let Some(w) = &r.witness {
        s.push_str(": ");
        if let Some(iso) = &w.isotope {
            let _ = write!(s, "in {iso}, ");
        }
        s.push_str(&assignment_text(&w.assignment));
    }
    s
}

fn report_record(loop_name: &str, r: &PropertyReport) -> Value {
    json!({
        "kind": "property",
        "loop": loop_name,
        "property": r.property,
        "holds": r.holds,
        "method": r.method,
        "witness": r.witness,
    })
}

fn cmd_check(out: &mut Out, file: &Path, name: &str, props: &[String], method: Method) -> Result<u8, Failure> {
    let f = load(file)?;
    let l = &find(&f, file, name)?.table;
    for p in props {
        properties::canonical_name(p)?;
    }
    let mut code = HOLDS;
    for p in props {
        let r = properties::check(l, p, method)?;
        if !r.holds {
            code = FALSIFIED;
        }
        out.text(report_text(name, &r));
        out.record(report_record(name, &r));
    }
    Ok(code)
}

fn cmd_identity(out: &mut Out, file: &Path, name: &str, expr: &str) -> Result<u8, Failure> {
    let f = load(file)?;
    let l = &find(&f, file, name)?.table;
    let id = Identity::parse("cli", expr).map_err(|e| Failure::usage(format!("{expr:?}: {e}")))?;
    let r = term::holds(l, &id);
    let verdict = if r.holds { "holds" } else { "fails" };
    match &r.counterexample {
        Some(a) => out.text(format!("{name}: {id} {verdict}: {}", assignment_text(a))),
        None => out.text(format!("{name}: {id} {verdict}")),
    }
    out.record(json!({
        "kind": "identity",
        "loop": name,
        "identity": id.to_string(),
        "holds": r.holds,
        "counterexample": r.counterexample,
    }));
    Ok(if r.holds { HOLDS } else { FALSIFIED })
}

fn cmd_isotope(
    out: &mut Out,
    file: &Path,
    name: &str,
    uv: (Option<usize>, Option<usize>),
    left: Option<usize>,
    right: Option<usize>,
) -> Result<u8, Failure> {
    let f = load(file)?;
    let l = &find(&f, file, name)?.table;
    let spec = match (uv, left, right) {
        ((Some(u), Some(v)), None, None) => IsotopeSpec::Full { u, v },
        ((None, None), Some(v), None) => IsotopeSpec::Left { v },
        ((None, None), None, Some(u)) => IsotopeSpec::Right { u },
        _ => return Err(Failure::usage("give U V, --left V or --right U")),
    };
    let (u, v) = match spec {
        IsotopeSpec::Full { u, v } => (u, v),
        IsotopeSpec::Left { v } => (0, v),
        IsotopeSpec::Right { u } => (u, 0),
    };
    if u >= l.order() || v >= l.order() {
        return Err(Failure::usage(format!("parameters must be below the order {}", l.order())));
    }
    let iso = principal_isotope(l, spec);
    let mut named = NamedLoop::new(format!("{name}-{}", spec_tag(spec)), iso.clone());
    named.comments = vec![
        format!("principal isotope {spec} of {name}"),
        format!("identity {} (labels kept, not normalized)", iso.identity()),
    ];
    let mut text = String::new();
    loopfile::write_loop(&mut text, &named);
    if out.format == Format::Text {
        out.buf.push_str(&text);
    }
    out.record(json!({
        "kind": "isotope",
        "loop": name,
        "spec": spec,
        "name": named.name,
        "identity": iso.identity(),
        "table": iso.rows(),
    }));
    Ok(HOLDS)
}

fn spec_tag(spec: IsotopeSpec) -> String {
    match spec {
        IsotopeSpec::Full { u, v } => format!("u{u}v{v}"),
        IsotopeSpec::Left { v } => format!("left{v}"),
        IsotopeSpec::Right { u } => format!("right{u}"),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_search(
    out: &mut Out,
    order: usize,
    require: Vec<String>,
    forbid: Vec<String>,
    limit: Option<usize>,
    mode: ModeArg,
    count: bool,
    seed: u64,
    prefix: &str,
    method: Method,
) -> Result<u8, Failure> {
    if count {
        let n = search::count_loops(order)?;
        out.text(n.to_string());
        out.record(json!({"kind": "count", "order": order, "count": n}));
        return Ok(HOLDS);
    }
    let mode = match mode {
        ModeArg::Exhaustive => Mode::Exhaustive,
        ModeArg::First => Mode::First,
    };
    let q = SearchQuery {
        order,
        require,
        forbid,
        limit,
        mode,
        method,
        seed,
    };
    let outcome = search::search(&q)?;
    let mode_name = if mode == Mode::First { "first" } else { "exhaustive" };
    let mut query = format!("search --order {order} --mode {mode_name}");
    if !q.require.is_empty() {
        let _ = write!(query, " --require {}", q.require.join(","));
    }
    if !q.forbid.is_empty() {
        let _ = write!(query, " --forbid {}", q.forbid.join(","));
    }
    if let Some(k) = limit {
        let _ = write!(query, " --limit {k}");
    }
    if mode == Mode::First {
        let _ = write!(query, " --seed {seed}");
    }
    let total = outcome.hits.len();
    for (i, hit) in outcome.hits.iter().enumerate() {
        let mut named = NamedLoop::new(format!("{prefix}{}", i + 1), hit.table.clone());
        named.comments = vec![format!("{query} (hit {} of {total})", i + 1)];
        if out.format == Format::Text {
            if i > 0 {
                out.buf.push('\n');
            }
            loopfile::write_loop(&mut out.buf, &named);
        }
        out.record(json!({
            "kind": "search-hit",
            "name": named.name,
            "index": i + 1,
            "table": hit.table.rows(),
            "reports": hit.reports,
        }));
    }
    let summary = format!(
        "# {total} hit(s), {} complete square(s) examined, exhausted={}",
        outcome.examined, outcome.exhausted
    );
    out.text(summary);
    out.record(json!({
        "kind": "search-summary",
        "query": query,
        "hits": total,
        "examined": outcome.examined,
        "exhausted": outcome.exhausted,
    }));
    Ok(if total > 0 { HOLDS } else { FALSIFIED })
}

fn confidence_label(c: Confidence) -> &'static str {
    match c {
        Confidence::Normal => "normal",
        Confidence::LowConfidence => "low-confidence",
        Confidence::Cited => "cited",
    }
}

fn claim_text(r: &ClaimReport) -> Vec<String> {
    let status = match (r.violations.is_empty(), r.confidence) {
        (true, _) => "ok  ",
        (false, Confidence::Normal) => "FAIL",
        (false, _) => "WARN",
    };
    let mut lines = vec![format!(
        "{status} {} [{}] tested={} vacuous={} verified={} violations={}",
        r.claim,
        confidence_label(r.confidence),
        r.tested,
        r.vacuous,
        r.verified,
        r.violations.len()
    )];
    for v in &r.violations {
        lines.push(format!("     {}: {}", v.loop_name, v.detail));
    }
    lines
}

fn cmd_verify(out: &mut Out, dir: &Path, only: &[String], method: Method) -> Result<u8, Failure> {
    let corpus = loopfile::read_corpus_dir(dir).map_err(Failure::usage)?;
    if corpus.is_empty() {
        return Err(Failure::usage(format!("{}: no *.loop files", dir.display())));
    }
    let all = theoremlab::claims();
    let claims: Vec<_> = if only.is_empty() {
        all.to_vec()
    } else {
        let mut picked = Vec::new();
        for id in only {
            picked.push(
                theoremlab::claim(id)
                    .cloned()
                    .ok_or_else(|| Failure::usage(format!("unknown claim {id:?}")))?,
            );
        }
        picked
    };
    let reports = theoremlab::run_catalog(&claims, &corpus, method)?;
    let mut failures = 0;
    let mut warnings = 0;
    let (mut vacuous, mut verified) = (0, 0);
    for r in &reports {
        failures += r.failures();
        warnings += r.violations.len() - r.failures();
        vacuous += r.vacuous;
        verified += r.verified;
        for line in claim_text(r) {
            out.text(line);
        }
        let mut rec = serde_json::to_value(r).expect("claim report serializes");
        rec["kind"] = json!("claim");
        out.record(rec);
    }
    out.text(format!(
        "{} loops, {} claims: {vacuous} vacuous, {verified} verified, {failures} violations, {warnings} warnings",
        corpus.len(),
        reports.len()
    ));
    out.record(json!({
        "kind": "verify-summary",
        "loops": corpus.len(),
        "claims": reports.len(),
        "vacuous": vacuous,
        "verified": verified,
        "violations": failures,
        "warnings": warnings,
    }));
    Ok(if failures == 0 { HOLDS } else { FALSIFIED })
}

fn cmd_catalog(out: &mut Out) -> Result<u8, Failure> {
    for n in registry::registry() {
        let e = n.entry;
        let mut flags = Vec::new();
        if !e.group_valid {
            flags.push("not-group-valid");
        }
        if e.low_confidence {
            flags.push("low-confidence");
        }
        let family = serde_json::to_value(e.family).unwrap_or_default();
        let family = family.as_str().unwrap_or("");
        let mut line = format!("{}\t{family}\t{}", e.name, n.identity);
        if !flags.is_empty() {
            let _ = write!(line, "\t[{}]", flags.join(", "));
        }
        out.text(line);
        out.record(json!({
            "kind": "registry-entry",
            "name": e.name,
            "family": family,
            "identity": n.identity.to_string(),
            "variables": n.identity.vars(),
            "group_valid": e.group_valid,
            "low_confidence": e.low_confidence,
            "note": e.note,
        }));
    }
    for c in theoremlab::claims() {
        out.text(format!("claim\t{}\t[{}]", c.id, confidence_label(c.confidence)));
        let mut rec = serde_json::to_value(c).expect("claim serializes");
        rec["kind"] = json!("claim-definition");
        out.record(rec);
    }
    Ok(HOLDS)
}

fn run(cli: Cli, out: &mut Out) -> Result<u8, Failure> {
    let method = Method::from(cli.method);
    match cli.command {
        Command::Check { file, name, properties } => cmd_check(out, &file, &name, &properties, method),
        Command::Identity { file, name, expression } => cmd_identity(out, &file, &name, &expression),
        Command::Isotope {
            file,
            name,
            u,
            v,
            left,
            right,
        } => cmd_isotope(out, &file, &name, (u, v), left, right),
        Command::Search {
            order,
            require,
            forbid,
            limit,
            mode,
            count,
            seed,
            prefix,
        } => cmd_search(out, order, require, forbid, limit, mode, count, seed, &prefix, method),
        Command::Verify { dir, claim } => cmd_verify(out, &dir, &claim, method),
        Command::Catalog => cmd_catalog(out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { HOLDS });
        }
    };
    if cli.jobs > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global() {
            eprintln!("loopcheck: {e}");
            return ExitCode::from(INTERNAL);
        }
    }
    let mut out = Out {
        format: cli.format,
        buf: String::new(),
    };
    let code = match run(cli, &mut out) {
        Ok(code) => code,
        Err(f) => {
            print!("{}", out.buf);
            eprintln!("loopcheck: {}", f.message);
            return ExitCode::from(f.code);
        }
    };
    print!("{}", out.buf);
    ExitCode::from(code)
}

