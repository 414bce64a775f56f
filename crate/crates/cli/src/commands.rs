use lcsupport::fsupport::{is_zero_module, support_ideal, GeneratingMorphism, SupportConfig, SupportReport};
use lcsupport::groebner::GbLimits;
use lcsupport::hyperloci::{hypersurface_support, injectivity_locus, surjectivity_locus, ChainConfig, LocusReport};
use lcsupport::lccohom::{degree_diagnostics, ext_gm, iterated_support, koszul_gm, IteratedSpec, Layer};
use lcsupport::ring::{MonomialOrder, Poly, PolyMatrix, Ring};
use serde_json::json;
use thiserror::Error;

use crate::bench::{run_bench, BenchParams};
use crate::problem::{ProblemError, ProblemFile};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Problem(#[from] ProblemError),
    #[error(transparent)]
    Core(#[from] lcsupport::Error),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn is_resource_failure(&self) -> bool {
        matches!(self, CliError::Core(e) if e.is_resource_failure())
    }

    /// 3 for resource failures, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.is_resource_failure() {
            3
        } else {
            1
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Options shared by all commands. Unset fields take the library defaults.
#[derive(Clone, Debug, Default)]
pub struct Flags {
    pub max_iter: Option<usize>,
    pub jmax: Option<usize>,
    pub gb_max_size: Option<usize>,
    pub gb_max_deg: Option<u32>,
    pub window: Option<usize>,
    pub seed: Option<u64>,
    pub csv: Option<std::path::PathBuf>,
    /// Ring given on the command line instead of a problem file.
    pub p: Option<u64>,
    pub vars: Option<String>,
    pub order: Option<String>,
    pub ideal: Option<String>,
    /// `ext` (default) or `koszul` for `lc`.
    pub via: Option<String>,
    pub j: Option<usize>,
    pub i: Option<usize>,
    pub g: Option<String>,
    /// `IDEAL:INDEX`, innermost first.
    pub layers: Vec<String>,
    pub primes: Option<String>,
    pub count: Option<usize>,
    pub n: Option<usize>,
    pub beta: Option<usize>,
    pub deg: Option<u32>,
    pub zero_u: bool,
    pub random_a: bool,
}

impl Flags {
    pub fn limits(&self) -> GbLimits {
        let mut l = GbLimits::default();
        if let Some(s) = self.gb_max_size {
            l.max_basis_size = s;
        }
        if let Some(d) = self.gb_max_deg {
            l.max_degree = d;
        }
        l
    }

    pub fn support_config(&self) -> SupportConfig {
        let mut c = SupportConfig {
            limits: self.limits(),
            ..SupportConfig::default()
        };
        if let Some(m) = self.max_iter {
            c.max_iter = m;
        }
        c
    }

    pub fn chain_config(&self) -> ChainConfig {
        let mut c = ChainConfig {
            limits: self.limits(),
            ..ChainConfig::default()
        };
        if let Some(w) = self.window {
            c.window = w;
        }
        if let Some(j) = self.jmax {
            c.j_max = j;
        }
        c
    }
}

/// Human-readable text plus the same content as JSON.
#[derive(Clone, Debug)]
pub struct Report {
    pub text: String,
    pub json: serde_json::Value,
}

pub const COMMANDS: [&str; 7] = ["support", "vanishes", "lc", "iterated", "hyperloci", "bounds", "bench"];

fn ring_of(problem: Option<&ProblemFile>, flags: &Flags) -> Result<Ring, CliError> {
    if let Some(pf) = problem {
        return Ok(pf.ring.clone());
    }
    let p = flags.p.ok_or_else(|| usage("no problem file: --p and --vars are required"))?;
    let vars = flags.vars.as_deref().ok_or_else(|| usage("no problem file: --vars is required"))?;
    let names: Vec<&str> = vars.split(',').map(str::trim).collect();
    let order = match flags.order.as_deref() {
        None => MonomialOrder::DegRevLex,
        Some(o) => MonomialOrder::from_name(o).ok_or_else(|| usage(format!("unknown order `{o}`")))?,
    };
    Ok(Ring::new(p, &names, order)?)
}

pub fn parse_ideal(ring: &Ring, text: &str) -> Result<Vec<Poly>, CliError> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| ring.parse(s).map_err(CliError::from))
        .collect()
}

fn ideal_arg(ring: &Ring, problem: Option<&ProblemFile>, flags: &Flags) -> Result<Vec<Poly>, CliError> {
    if let Some(s) = &flags.ideal {
        return parse_ideal(ring, s);
    }
    problem
        .and_then(ProblemFile::first_ideal)
        .map(<[Poly]>::to_vec)
        .ok_or_else(|| usage("an ideal is required (--ideal or an `ideal` block)"))
}

fn gm_from_file(problem: Option<&ProblemFile>) -> Result<GeneratingMorphism, CliError> {
    let pf = problem.ok_or_else(|| usage("this command needs a problem file with a matrix U"))?;
    let u = pf.matrix("U").ok_or_else(|| usage("problem file has no matrix U"))?.clone();
    let a = pf
        .matrix("A")
        .cloned()
        .unwrap_or_else(|| PolyMatrix::zeros(u.rows(), 0));
    Ok(GeneratingMorphism::new(&pf.ring, a, u)?)
}

fn format_ideal(ring: &Ring, ideal: &[Poly]) -> String {
    if ideal.is_empty() {
        return "(0)".into();
    }
    let gens: Vec<String> = ideal.iter().map(|f| ring.format(f)).collect();
    format!("({})", gens.join(", "))
}

fn support_report(ring: &Ring, rep: &SupportReport) -> Report {
    let mut flags = Vec::new();
    if rep.module_is_zero {
        flags.push("module-is-zero");
    }
    if rep.support_is_everything {
        flags.push("support-is-everything");
    }
    let ideal: Vec<String> = rep.ideal.iter().map(|f| ring.format(f)).collect();
    let text = format!(
        "J = {}\niterations: {}\nstable generators: {}\nflags: {}\n",
        format_ideal(ring, &rep.ideal),
        rep.iterations(),
        rep.iteration.stable.dim(),
        if flags.is_empty() { "none".to_string() } else { flags.join(" ") },
    );
    let json = json!({
        "ideal": ideal,
        "iterations": rep.iterations(),
        "stable_dim": rep.iteration.stable.dim(),
        "degrees": rep.iteration.degrees,
        "degree_bound": rep.iteration.bound,
        "flags": flags,
    });
    Report { text, json }
}

fn locus_json(ring: &Ring, r: &LocusReport) -> serde_json::Value {
    json!({
        "kind": format!("{:?}", r.kind),
        "ideal": r.ideal.iter().map(|f| ring.format(f)).collect::<Vec<_>>(),
        "eta": r.eta,
        "j_reached": r.j_reached,
        "certified": r.certified,
        "flags": r.flags,
        "parts": r.parts.iter().map(|p| locus_json(ring, p)).collect::<Vec<_>>(),
    })
}

fn locus_text(ring: &Ring, label: &str, r: &LocusReport) -> String {
    let eta = r.eta.map_or("none".to_string(), |e| e.to_string());
    let mut s = format!(
        "{label}: V{} eta={eta} j_reached={} certified={}",
        format_ideal(ring, &r.ideal),
        r.j_reached,
        r.certified
    );
    if !r.flags.is_empty() {
        s.push_str(&format!(" [{}]", r.flags.join("; ")));
    }
    s.push('\n');
    s
}

fn parse_layer(ring: &Ring, text: &str) -> Result<Layer, CliError> {
    let (ideal, index) = text
        .rsplit_once(':')
        .ok_or_else(|| usage(format!("layer `{text}` is not IDEAL:INDEX")))?;
    let index = index
        .trim()
        .parse()
        .map_err(|_| usage(format!("bad layer index in `{text}`")))?;
    Ok(Layer {
        ideal: parse_ideal(ring, ideal)?,
        index,
    })
}

/// Integer terms of a polynomial read over the reference prime, with
/// coefficients lifted to the symmetric range.
fn integer_terms(ring: &Ring, f: &Poly) -> Vec<(i64, Vec<u32>)> {
    let p = ring.p() as i64;
    f.terms()
        .iter()
        .map(|t| {
            let c = t.coef as i64;
            let c = if c > p / 2 { c - p } else { c };
            (c, t.mono.exps().to_vec())
        })
        .collect()
}

pub fn run_command(name: &str, problem: Option<&ProblemFile>, flags: &Flags) -> Result<Report, CliError> {
    match name {
        "support" => {
            let gm = gm_from_file(problem)?;
            let rep = support_ideal(&gm, &flags.support_config())?;
            Ok(support_report(gm.ring(), &rep))
        }
        "vanishes" => {
            let gm = gm_from_file(problem)?;
            let zero = is_zero_module(&gm, &flags.support_config())?;
            let answer = if zero { "yes" } else { "no" };
            Ok(Report {
                text: format!("{answer}\n"),
                json: json!({ "vanishes": zero }),
            })
        }
        "lc" => {
            let ring = ring_of(problem, flags)?;
            let ideal = ideal_arg(&ring, problem, flags)?;
            let j = flags.j.ok_or_else(|| usage("lc needs --j"))?;
            let cfg = flags.support_config();
            let gm = match flags.via.as_deref().unwrap_or("ext") {
                "ext" => ext_gm(&ring, &ideal, j, &cfg.limits)?,
                "koszul" => {
                    let free = GeneratingMorphism::free(&ring, PolyMatrix::identity(&ring, 1))?;
                    koszul_gm(&free, &ideal, j, &cfg.limits)?
                }
                other => return Err(usage(format!("unknown --via `{other}`; expected ext or koszul"))),
            };
            let mut rep = support_report(&ring, &support_ideal(&gm, &cfg)?);
            rep.text = format!("beta: {}\n{}", gm.beta(), rep.text);
            rep.json["beta"] = json!(gm.beta());
            Ok(rep)
        }
        "iterated" => {
            let ring = ring_of(problem, flags)?;
            if flags.layers.is_empty() {
                return Err(usage("iterated needs at least one --layer IDEAL:INDEX"));
            }
            let layers = flags
                .layers
                .iter()
                .flat_map(|l| l.split(';'))
                .map(|l| parse_layer(&ring, l))
                .collect::<Result<Vec<_>, _>>()?;
            let spec = IteratedSpec::new(layers)?;
            let rep = iterated_support(&ring, &spec, &flags.support_config())?;
            Ok(support_report(&ring, &rep))
        }
        "hyperloci" => {
            let ring = ring_of(problem, flags)?;
            let g = ring.parse(flags.g.as_deref().ok_or_else(|| usage("hyperloci needs --g"))?)?;
            let cfg = flags.chain_config();
            if flags.ideal.is_some() || (problem.is_some_and(|p| p.matrix("U").is_none())) {
                let ideal = ideal_arg(&ring, problem, flags)?;
                let i = flags.i.ok_or_else(|| usage("hyperloci with an ideal needs --i"))?;
                let gm_i = ext_gm(&ring, &ideal, i, &cfg.limits)?;
                let gm_next = ext_gm(&ring, &ideal, i + 1, &cfg.limits)?;
                let r = hypersurface_support(&gm_i, &gm_next, &g, &cfg)?;
                let mut text = locus_text(&ring, &format!("Supp H^{i}(R/gR)"), &r);
                text.push_str(&locus_text(&ring, &format!("  S^{i}"), &r.parts[0]));
                text.push_str(&locus_text(&ring, &format!("  I^{}", i + 1), &r.parts[1]));
                Ok(Report {
                    text,
                    json: locus_json(&ring, &r),
                })
            } else {
                let gm = gm_from_file(problem)?;
                let inj = injectivity_locus(&gm, &g, &cfg)?;
                let surj = surjectivity_locus(&gm, &g, &cfg)?;
                let text = locus_text(&ring, "injectivity", &inj) + &locus_text(&ring, "surjectivity", &surj);
                Ok(Report {
                    text,
                    json: json!({
                        "injectivity": locus_json(&ring, &inj),
                        "surjectivity": locus_json(&ring, &surj),
                    }),
                })
            }
        }
        "bounds" => {
            let names: Vec<String> = match problem {
                Some(pf) => pf.ring.names().to_vec(),
                None => flags
                    .vars
                    .as_deref()
                    .ok_or_else(|| usage("bounds needs --vars or a problem file"))?
                    .split(',')
                    .map(|s| s.trim().to_string())
                    .collect(),
            };
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            let reference = Ring::new(lcsupport::lccohom::REFERENCE_PRIME, &refs, MonomialOrder::DegRevLex)?;
            let ideal_text = match (&flags.ideal, problem.and_then(ProblemFile::first_ideal)) {
                (Some(s), _) => s.clone(),
                (None, Some(gens)) => {
                    let ring = &problem.unwrap().ring;
                    gens.iter().map(|f| ring.format(f)).collect::<Vec<_>>().join(",")
                }
                (None, None) => return Err(usage("bounds needs --ideal or an `ideal` block")),
            };
            let terms: Vec<_> = parse_ideal(&reference, &ideal_text)?
                .iter()
                .map(|f| integer_terms(&reference, f))
                .collect();
            let j = flags.j.ok_or_else(|| usage("bounds needs --j"))?;
            let primes: Vec<u64> = flags
                .primes
                .as_deref()
                .unwrap_or("2,3,5,7")
                .split(',')
                .map(|s| s.trim().parse().map_err(|_| usage(format!("bad prime `{s}`"))))
                .collect::<Result<_, _>>()?;
            let rows = degree_diagnostics(&refs, &terms, j, &primes, &flags.support_config())?;
            let mut text = String::from("p delta_p Delta ranks_match 2jDelta ceil(delta_p/(p-1)) degrees status\n");
            let mut json_rows = Vec::new();
            for r in &rows {
                let status = match (&r.error, r.violations.is_empty()) {
                    (Some(e), _) => format!("error: {e}"),
                    (None, true) => "ok".into(),
                    (None, false) => format!("violations: {}", r.violations.join("; ")),
                };
                text.push_str(&format!(
                    "{} {} {} {} {} {} {:?} {}\n",
                    r.p, r.delta_p, r.big_delta, r.ranks_match, r.bound_2j_delta, r.bound_remark, r.degrees, status
                ));
                json_rows.push(json!({
                    "p": r.p, "delta_p": r.delta_p, "Delta": r.big_delta, "ranks_match": r.ranks_match,
                    "degrees": r.degrees, "bound_2j_delta": r.bound_2j_delta, "bound_remark": r.bound_remark,
                    "violations": r.violations, "error": r.error,
                }));
            }
            if rows.iter().any(|r| r.ranks_match && !r.violations.is_empty()) {
                return Err(CliError::Core(lcsupport::Error::Internal(format!("degree bound violated\n{text}"))));
            }
            Ok(Report {
                text,
                json: json!(json_rows),
            })
        }
        "bench" => {
            let params = BenchParams::from_flags(flags)?;
            let rows = run_bench(&params);
            let mut buf = Vec::new();
            crate::bench::write_csv(&rows, &mut buf)?;
            if let Some(path) = &flags.csv {
                std::fs::write(path, &buf)?;
            }
            let ok = rows.iter().filter(|r| r.outcome == "ok").count();
            let text = if flags.csv.is_some() {
                format!("{} instances, {ok} ok\n", rows.len())
            } else {
                String::from_utf8(buf).expect("CSV is UTF-8")
            };
            Ok(Report {
                text,
                json: json!({ "instances": rows.len(), "ok": ok }),
            })
        }
        other => Err(usage(format!("unknown command `{other}`; expected one of {}", COMMANDS.join(", ")))),
    }
}
