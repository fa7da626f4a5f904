//! Command implementations: load inputs, run the library, render output.
//!
//! Every handler returns either a rendered document plus a pass flag, or a
//! failure sorted into usage (exit 2) and mathematics (exit 1). File and
//! JSON problems are usage failures; a well-formed object whose checks come
//! out false is a mathematical one.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Serialize;

use schober_core::braid::BraidWord;
use schober_core::dot::{dot_of_presentation, dot_of_system};
use schober_core::error::{GitFlopError, LocalSysError, PervError};
use schober_core::gitflop::{
    build_flop_model, build_git_pair, build_skms, build_windows, check_euler_vanishing,
    skms_pullback_refines, twist_vs_phi, verify_relations, WallCrossing,
};
use schober_core::localsys::{parse_word, GroupoidPresentation, LatticeLocalSystem};
use schober_core::perv::{GmvData, KsQuiverData, LinearSphericalPair};
use schober_core::surface::SurfaceSchober;

use crate::{
    BraidActArgs, BuildSkmsArgs, Command, CrossingArgs, ExportDotArgs, MonodromyArgs, OutputArgs,
    PullbackArgs, ValidateArgs, VerifyArgs,
};

pub enum Failure {
    Usage(String),
    Math(String),
}

pub struct Rendered {
    body: String,
    out: Option<PathBuf>,
    pub pass: bool,
}

impl Rendered {
    pub fn emit(&self) -> Result<(), String> {
        match &self.out {
            Some(path) => fs::write(path, &self.body)
                .map_err(|e| format!("cannot write {}: {e}", path.display())),
            None => {
                print!("{}", self.body);
                Ok(())
            }
        }
    }
}

pub fn dispatch(cmd: Command) -> Result<Rendered, Failure> {
    match cmd {
        Command::Validate(a) => validate(a),
        Command::BraidAct(a) => braid_act(a),
        Command::Monodromy(a) => monodromy(a),
        Command::BuildWindows(a) => build_windows_cmd(a),
        Command::BuildPair(a) => build_pair_cmd(a),
        Command::BuildSkms(a) => build_skms_cmd(a),
        Command::Verify(a) => verify(a),
        Command::Pullback(a) => pullback(a),
        Command::ExportDot(a) => export_dot(a),
    }
}

fn load<T: DeserializeOwned>(path: &Path, kind: &str) -> Result<T, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("bad {kind} in {}: {e}", path.display())))
}

fn json_body<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

/// Report output: JSON or the prepared human text, by flag.
fn output<T: Serialize>(o: &OutputArgs, report: &T, human: String, pass: bool) -> Rendered {
    Rendered {
        body: if o.json { json_body(report) } else { human },
        out: o.out.clone(),
        pass,
    }
}

/// Data output: the document itself is the payload in both modes.
fn data_output<T: Serialize>(o: &OutputArgs, value: &T) -> Rendered {
    Rendered {
        body: json_body(value),
        out: o.out.clone(),
        pass: true,
    }
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "VALID"
    } else {
        "INVALID"
    }
}

fn pass_str(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn math(e: impl std::fmt::Display) -> Failure {
    Failure::Math(e.to_string())
}

fn perv_failure(e: PervError) -> Failure {
    match e {
        PervError::IndexOutOfRange { .. } => Failure::Usage(e.to_string()),
        _ => math(e),
    }
}

fn ls_failure(e: LocalSysError) -> Failure {
    match e {
        LocalSysError::UnknownBasepoint(_)
        | LocalSysError::UnknownGenerator(_)
        | LocalSysError::NotComposable(_) => Failure::Usage(e.to_string()),
        _ => math(e),
    }
}

fn gitflop_failure(e: GitFlopError) -> Failure {
    match e {
        GitFlopError::Unsupported(_) => Failure::Usage(e.to_string()),
        _ => math(e),
    }
}

fn parse_weights(text: &str, w: i64) -> Result<WallCrossing, Failure> {
    let bad = |msg: &str| Failure::Usage(format!("bad weights {text:?}: {msg}"));
    let rest = text
        .trim()
        .strip_prefix("a=")
        .ok_or_else(|| bad("expected a=..,b=.."))?;
    let (a_text, b_text) = rest.split_once("b=").ok_or_else(|| bad("expected a=..,b=.."))?;
    let list = |text: &str| -> Result<Vec<i64>, Failure> {
        let items: Result<Vec<i64>, _> = text
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(str::parse)
            .collect();
        let v = items.map_err(|_| bad("weights must be integers"))?;
        if v.is_empty() {
            return Err(bad("empty weight list"));
        }
        Ok(v)
    };
    Ok(WallCrossing {
        a: list(a_text)?,
        b: list(b_text)?,
        w,
    })
}

fn parse_flop_size(text: &str) -> Result<usize, Failure> {
    let t = text.trim();
    let t = t.strip_prefix("n=").unwrap_or(t);
    t.parse()
        .map_err(|_| Failure::Usage(format!("bad flop size {text:?}, expected n=<size>")))
}

fn validate(a: ValidateArgs) -> Result<Rendered, Failure> {
    let o = &a.output;
    if let Some(p) = &a.local_system {
        let l: LatticeLocalSystem = load(p, "local system")?;
        let report = l.validate().map_err(math)?;
        let mut t = format!("local system: {}\n", verdict(report.valid));
        if !report.singular_generators.is_empty() {
            let _ = writeln!(t, "  singular generators: {}", report.singular_generators.join(" "));
        }
        if !report.violated_relations.is_empty() {
            let _ = writeln!(t, "  violated relations: {}", report.violated_relations.join(" "));
        }
        return Ok(output(o, &report, t, report.valid));
    }
    if let Some(p) = &a.disk {
        let d: GmvData = load(p, "disk presentation")?;
        let report = d.validate().map_err(math)?;
        let mut t = format!(
            "disk presentation: {} ({} points, ambient dim {})\n",
            verdict(report.valid),
            d.points.len(),
            d.ambient_dim
        );
        if !report.singular_points.is_empty() {
            let list: Vec<String> = report.singular_points.iter().map(usize::to_string).collect();
            let _ = writeln!(t, "  singular points: {}", list.join(" "));
        }
        return Ok(output(o, &report, t, report.valid));
    }
    if let Some(p) = &a.pair {
        let pair: LinearSphericalPair = load(p, "spherical pair")?;
        let report = pair.validate().map_err(math)?;
        let mut t = format!("spherical pair: {}\n", verdict(report.valid));
        let _ = writeln!(t, "  minus decomposition: {}", report.direct_sum_minus);
        let _ = writeln!(t, "  plus decomposition: {}", report.direct_sum_plus);
        if !report.singular_cross_maps.is_empty() {
            let _ = writeln!(t, "  singular cross maps: {}", report.singular_cross_maps.join(", "));
        }
        return Ok(output(o, &report, t, report.valid));
    }
    if let Some(p) = &a.surface {
        let s: SurfaceSchober = load(p, "surface schober")?;
        let report = s.validate().map_err(math)?;
        let mut t = format!("surface schober: {}\n", verdict(report.valid));
        let _ = writeln!(t, "  disk: {}", verdict(report.disk.valid));
        let _ = writeln!(t, "  outside: {}", verdict(report.outside.valid));
        let _ = writeln!(t, "  boundary matches: {}", report.boundary_matches);
        if !report.outside.violated_relations.is_empty() {
            let _ = writeln!(
                t,
                "  violated relations: {}",
                report.outside.violated_relations.join(" ")
            );
        }
        return Ok(output(o, &report, t, report.valid));
    }
    if let Some(p) = &a.crossing {
        let wc: WallCrossing = load(p, "wall crossing")?;
        let report = build_windows(&wc).map_err(math)?;
        let mut t = format!("wall crossing: {}\n", verdict(report.phis_unimodular));
        let _ = writeln!(t, "  eta: {}, level: {}", report.eta, report.level);
        let _ = writeln!(t, "  transfers unimodular: {}", report.phis_unimodular);
        return Ok(output(o, &report, t, report.phis_unimodular));
    }
    let p = a.quiver.as_ref().expect("clap enforces one object");
    let k: KsQuiverData = load(p, "quiver data")?;
    let report = k.validate().map_err(math)?;
    let mut t = format!("quiver data: {}\n", verdict(report.valid));
    let _ = writeln!(t, "  retraction minus: {}", report.retraction_minus);
    let _ = writeln!(t, "  retraction plus: {}", report.retraction_plus);
    let _ = writeln!(t, "  transitions invertible: {}", report.transitions_invertible);
    Ok(output(o, &report, t, report.valid))
}

fn braid_act(a: BraidActArgs) -> Result<Rendered, Failure> {
    let d: GmvData = load(&a.data, "disk presentation")?;
    let word = BraidWord::parse_compact(&a.word).map_err(Failure::Usage)?;
    let moved = d.braid_act(&word).map_err(perv_failure)?;
    Ok(data_output(&a.output, &moved))
}

fn monodromy(a: MonodromyArgs) -> Result<Rendered, Failure> {
    if let Some(p) = &a.data {
        let d: GmvData = load(p, "disk presentation")?;
        let report = d.validate().map_err(math)?;
        let mut t = format!("points: {}, ambient dim {}\n", d.points.len(), d.ambient_dim);
        for (i, m) in report.per_monodromy.iter().enumerate() {
            let _ = writeln!(t, "m_{}: {m:?}", i + 1);
        }
        let _ = writeln!(t, "total: {:?}", report.total_monodromy);
        return Ok(output(&a.output, &report, t, report.valid));
    }
    let p = a.local_system.as_ref().expect("clap enforces one source");
    let l: LatticeLocalSystem = load(p, "local system")?;
    let word = parse_word(a.word.as_deref().unwrap_or("")).map_err(Failure::Usage)?;
    let m = match &a.basepoint {
        Some(bp) => l.monodromy_at(&word, bp).map_err(ls_failure)?,
        None => l.monodromy(&word).map_err(ls_failure)?,
    };
    Ok(output(&a.output, &m, format!("transport: {m:?}\n"), true))
}

fn build_windows_cmd(a: CrossingArgs) -> Result<Rendered, Failure> {
    let wc = parse_weights(&a.weights, a.w)?;
    let report = build_windows(&wc).map_err(gitflop_failure)?;
    let mut t = format!("eta: {}, level: {}\n", report.eta, report.level);
    let _ = writeln!(t, "kappa_minus: {:?}", report.kappa_minus);
    let _ = writeln!(t, "kappa_plus: {:?}", report.kappa_plus);
    let _ = writeln!(t, "phi_minus_to_plus: {:?}", report.phi_minus_to_plus);
    let _ = writeln!(t, "phi_plus_to_minus: {:?}", report.phi_plus_to_minus);
    let _ = writeln!(t, "twist: {:?}", report.twist);
    let _ = writeln!(t, "unimodular: {}", report.phis_unimodular);
    Ok(output(&a.output, &report, t, report.phis_unimodular))
}

fn build_pair_cmd(a: CrossingArgs) -> Result<Rendered, Failure> {
    let wc = parse_weights(&a.weights, a.w)?;
    let pair = build_git_pair(&wc).map_err(gitflop_failure)?;
    Ok(data_output(&a.output, &pair))
}

fn build_skms_cmd(a: BuildSkmsArgs) -> Result<Rendered, Failure> {
    let model = build_flop_model(a.n).map_err(gitflop_failure)?;
    let sys = build_skms(&model).map_err(gitflop_failure)?;
    Ok(data_output(&a.output, &sys))
}

fn verify(a: VerifyArgs) -> Result<Rendered, Failure> {
    if let Some(size) = &a.flop {
        let n = parse_flop_size(size)?;
        let model = build_flop_model(n).map_err(gitflop_failure)?;
        let report = verify_relations(&model).map_err(gitflop_failure)?;
        let mut t = String::new();
        for c in &report.checks {
            let _ = writeln!(t, "relation {}: {}", c.name, pass_str(c.pass));
        }
        let _ = writeln!(t, "flop relations: {}", verdict(report.valid));
        return Ok(output(&a.output, &report, t, report.valid));
    }
    if let Some(max_n) = a.euler {
        let reports = (0..=max_n)
            .map(|n| check_euler_vanishing(n, 5))
            .collect::<Result<Vec<_>, _>>()
            .map_err(gitflop_failure)?;
        let pass = reports.iter().all(|r| r.all_zero);
        let mut t = String::new();
        for r in &reports {
            let _ = writeln!(
                t,
                "n = {}: pairings on [-{}, {}] {}",
                r.n,
                r.range,
                r.range,
                if r.all_zero { "all vanish" } else { "DO NOT vanish" }
            );
        }
        return Ok(output(&a.output, &reports, t, pass));
    }
    let weights = a.weights.as_ref().expect("clap requires weights with --twist");
    let wc = parse_weights(weights, a.w)?;
    let cmp = twist_vs_phi(&wc).map_err(gitflop_failure)?;
    let pass = cmp.equal && cmp.phis_unimodular;
    let mut t = format!("twist via pair: {:?}\n", cmp.twist_pair);
    let _ = writeln!(t, "twist via reduction: {:?}", cmp.twist_reduction);
    let _ = writeln!(t, "equal: {}, unimodular: {}", cmp.equal, cmp.phis_unimodular);
    Ok(output(&a.output, &cmp, t, pass))
}

fn pullback(a: PullbackArgs) -> Result<Rendered, Failure> {
    let model = build_flop_model(a.n).map_err(gitflop_failure)?;
    let report = skms_pullback_refines(&model, a.window).map_err(gitflop_failure)?;
    let mut t = format!("window: [{}, {}]\n", report.window.0, report.window.1);
    let cut = |pairs: &[(String, String)]| -> String {
        pairs
            .iter()
            .map(|(g, s)| format!("{g}@{s}"))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let _ = writeln!(t, "cut generators: {}", cut(&report.cut_generators));
    let _ = writeln!(t, "cut relations: {}", cut(&report.cut_relations));
    let _ = writeln!(t, "coarse loops refine: {}", pass_str(report.refinement_holds));
    for c in &report.checks {
        let _ = writeln!(
            t,
            "integer {} at {}: alternation {}, twist {}",
            c.integer,
            c.basepoint,
            pass_str(c.alternates),
            pass_str(c.monodromy_matches_twist)
        );
    }
    let _ = writeln!(t, "refinement: {}", verdict(report.valid));
    Ok(output(&a.output, &report, t, report.valid))
}

fn export_dot(a: ExportDotArgs) -> Result<Rendered, Failure> {
    let body = if let Some(p) = &a.local_system {
        let l: LatticeLocalSystem = load(p, "local system")?;
        dot_of_system(&l)
    } else {
        let p = a.presentation.as_ref().expect("clap enforces one graph");
        let pres: GroupoidPresentation = load(p, "presentation")?;
        dot_of_presentation(&pres)
    };
    Ok(Rendered {
        body,
        out: a.output.out,
        pass: true,
    })
}
