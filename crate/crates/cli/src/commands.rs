use forbid_core::certify::RegularityMode;
use forbid_core::constructions::sample_jumble_graph;
use forbid_core::experiments::count_named_class;
use forbid_core::pattern::{chi_c, is_reduced, Outcome};
use forbid_core::*;
use serde::Serialize;
use serde_json::json;

use crate::args::*;
use crate::io::{emit, read_graph, read_json, render_graph, sidecar_path, to_json, CliError, Stamp};

/// Outcome of a command: a status word and the process exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Verdict {
    pub status: &'static str,
    pub exit: i32,
}

const SUCCESS: Verdict = Verdict { status: "ok", exit: 0 };
const NONE: Verdict = Verdict {
    status: "none",
    exit: 1,
};
const UNKNOWN: Verdict = Verdict {
    status: "unknown",
    exit: 2,
};

fn certificate_verdict(status: Status) -> Verdict {
    match status {
        Status::Verified => Verdict {
            status: "verified",
            exit: 0,
        },
        Status::Refuted => Verdict {
            status: "refuted",
            exit: 1,
        },
        Status::Unknown => UNKNOWN,
    }
}

pub fn command_name(command: &Command) -> String {
    match command {
        Command::Square(_) => "square".into(),
        Command::Pattern(_) => "pattern".into(),
        Command::Jumble(_) => "jumble".into(),
        Command::Partitions(_) => "partitions".into(),
        Command::Build { kind } => match kind {
            BuildKind::Ars(_) => "build ars".into(),
            BuildKind::Eps(_) => "build eps".into(),
        },
        Command::Certify { kind } => match kind {
            CertifyKind::Ars(_) => "certify ars".into(),
            CertifyKind::Eps(_) => "certify eps".into(),
            CertifyKind::Jumble(_) => "certify jumble".into(),
            CertifyKind::Regularity(_) => "certify regularity".into(),
            CertifyKind::Star(_) => "certify star".into(),
            CertifyKind::Al(_) => "certify al".into(),
        },
        Command::Solve { kind: SolveKind::St(_) } => "solve st".into(),
        Command::Chic(_) => "chic".into(),
        Command::Reduced(_) => "reduced".into(),
        Command::Experiment {
            kind: ExperimentKind::P3h(_),
        } => "experiment p3h".into(),
        Command::Enumerate(_) => "enumerate".into(),
    }
}

type Builder = fn(&PartitionSystem, u64) -> Result<(Graph, BuildLog)>;

pub fn run(command: &Command) -> Result<Verdict, CliError> {
    let name = command_name(command);
    let name = name.as_str();
    match command {
        Command::Square(a) => {
            let square = make_l_square(checked_l(a.l)?);
            square.validate()?;
            let stamp = Stamp {
                command: name,
                config: a,
                seed: None,
                budget: None,
            };
            write_json(&a.output, &stamp, &square)
        }
        Command::Pattern(a) => {
            let pat = make_l_pattern(checked_l(a.l)?);
            pat.validate()?;
            let stamp = Stamp {
                command: name,
                config: a,
                seed: None,
                budget: None,
            };
            write_json(&a.output, &stamp, &pat)
        }
        Command::Jumble(a) => {
            let pat = make_l_pattern(checked_l(a.l)?);
            let g = sample_jumble_graph(&pat, a.seed);
            let stamp = Stamp {
                command: name,
                config: a,
                seed: Some(a.seed),
                budget: None,
            };
            write_graph(&a.output, &stamp, &g, &pat)
        }
        Command::Partitions(a) => {
            let thresholds = match a.thresholds {
                ThresholdKind::Relaxed if a.l > a.k && a.k > 0 => Thresholds::relaxed(a.l, a.k),
                _ => Thresholds::asymptotic(a.k),
            };
            let sys = sample_partition_system(a.l, a.k, a.seed, a.max_retries, thresholds)?;
            let stamp = Stamp {
                command: name,
                config: a,
                seed: Some(a.seed),
                budget: Some(a.max_retries),
            };
            write_json(&a.output, &stamp, &sys)
        }
        Command::Build { kind } => {
            let (a, build): (_, Builder) = match kind {
                BuildKind::Ars(a) => (a, build_ars_graph),
                BuildKind::Eps(a) => (a, build_eps_graph),
            };
            let sys: PartitionSystem = read_json(&a.system)?;
            sys.check_structure().map_err(|e| CliError::Input {
                path: a.system.clone(),
                message: e,
            })?;
            let (g, log) = build(&sys, a.seed)?;
            let stamp = Stamp {
                command: name,
                config: a,
                seed: Some(a.seed),
                budget: None,
            };
            write_graph(&a.output, &stamp, &g, &log)
        }
        Command::Certify { kind } => certify(name, kind),
        Command::Solve { kind: SolveKind::St(a) } => {
            let g = read_graph(&a.graph)?;
            let mut parts = vec![PartConstraint::Stable; a.s];
            parts.extend(std::iter::repeat_n(PartConstraint::Clique, a.t));
            let report = pattern_partition(&g, &Pattern::new(parts), false, a.budget);
            let (verdict, partition) = match report.outcome {
                Outcome::Found(p) => (
                    Verdict {
                        status: "found",
                        exit: 0,
                    },
                    Some(p),
                ),
                Outcome::NoPartition => (NONE, None),
                _ => (UNKNOWN, None),
            };
            let data = json!({ "status": verdict.status, "partition": partition, "nodes": report.nodes });
            let stamp = Stamp {
                command: name,
                config: a,
                seed: None,
                budget: Some(a.budget),
            };
            write_json(&a.output, &stamp, &data)?;
            Ok(verdict)
        }
        Command::Chic(a) => {
            let g = read_graph(&a.graph)?;
            let c = chi_c(&g, a.lmax);
            let stamp = Stamp {
                command: name,
                config: a,
                seed: None,
                budget: None,
            };
            write_scalar(&a.output, &stamp, &c, c.value)
        }
        Command::Reduced(a) => {
            let (j, h) = (read_graph(&a.j)?, read_graph(&a.h)?);
            let r = is_reduced(&j, &h, checked_l(a.l)?);
            let stamp = Stamp {
                command: name,
                config: a,
                seed: None,
                budget: None,
            };
            write_json(&a.output, &stamp, &r)?;
            Ok(if r.reduced {
                Verdict {
                    status: "reduced",
                    exit: 0,
                }
            } else {
                Verdict {
                    status: "dangerous",
                    exit: 1,
                }
            })
        }
        Command::Experiment {
            kind: ExperimentKind::P3h(a),
        } => {
            let report = h_statistics_p3free(a.n, a.trials, a.seed, a.jobs.max(1))?;
            let stamp = Stamp {
                command: name,
                config: a,
                seed: Some(a.seed),
                budget: None,
            };
            write_json(&a.output, &stamp, &report)
        }
        Command::Enumerate(a) => {
            let count = count_named_class(a.n, &a.class, a.jobs.max(1))?;
            let stamp = Stamp {
                command: name,
                config: a,
                seed: None,
                budget: None,
            };
            let value = count.count.clone();
            write_scalar(&a.output, &stamp, &count, value)
        }
    }
}

fn certify(name: &str, kind: &CertifyKind) -> Result<Verdict, CliError> {
    let (output, stamp_budget, certs, config) = match kind {
        CertifyKind::Ars(a) | CertifyKind::Eps(a) => {
            let g = read_graph(&a.graph)?;
            let log: Option<BuildLog> = a.log.as_deref().map(read_json).transpose()?;
            let certs = if matches!(kind, CertifyKind::Ars(_)) {
                certify_ars(&g, a.l, log.as_ref(), a.budget)?
            } else {
                certify_eps(&g, a.l, log.as_ref(), a.budget)?
            };
            (&a.output, a.budget, certs, serde_json::to_value(a))
        }
        CertifyKind::Jumble(a) => {
            let (g, pat) = graph_and_pattern(a)?;
            (
                &a.output,
                a.budget,
                certify_jumble(&g, &pat, a.budget)?,
                serde_json::to_value(a),
            )
        }
        CertifyKind::Regularity(a) => {
            let (g, pat) = graph_and_pattern(&a.target)?;
            let mode = match a.mode {
                RegularityKind::Exhaustive => RegularityMode::Exhaustive,
                RegularityKind::Sampled => RegularityMode::Sampled { seed: a.seed },
            };
            let cert = check_regularity(&g, &pat, mode, a.target.budget)?;
            (&a.target.output, a.target.budget, vec![cert], serde_json::to_value(a))
        }
        CertifyKind::Star(a) => {
            let (g, pat) = graph_and_pattern(a)?;
            (
                &a.output,
                a.budget,
                vec![check_star_condition(&g, &pat)?],
                serde_json::to_value(a),
            )
        }
        CertifyKind::Al(a) => {
            let g = read_graph(&a.graph)?;
            (
                &a.output,
                a.budget,
                vec![check_a_l(&g, a.l, a.budget)?],
                serde_json::to_value(a),
            )
        }
    };
    let config = config.expect("argument structs serialize");
    let seed = match kind {
        CertifyKind::Regularity(a) if a.mode == RegularityKind::Sampled => Some(a.seed),
        _ => None,
    };
    let status = bundle_status(&certs);
    let stamp = Stamp {
        command: name,
        config: &config,
        seed,
        budget: Some(stamp_budget),
    };
    write_json(output, &stamp, &json!({ "status": status, "certificates": certs }))?;
    Ok(certificate_verdict(status))
}

fn checked_l(l: usize) -> Result<usize, CliError> {
    if l == 0 {
        return Err(CliError::Usage("--l must be positive".into()));
    }
    Ok(l)
}

fn graph_and_pattern(a: &CertifyPatternArgs) -> Result<(Graph, LPattern), CliError> {
    let g = read_graph(&a.graph)?;
    let pat = match (&a.pattern, a.l) {
        (Some(path), _) => read_json::<LPattern>(path)?,
        (None, Some(l)) => make_l_pattern(checked_l(l)?),
        (None, None) => return Err(CliError::Usage("either --pattern or --l is required".into())),
    };
    pat.validate()?;
    if let Some(l) = a.l {
        if l != pat.l {
            return Err(CliError::Usage(format!(
                "--l {l} disagrees with the pattern's l = {}",
                pat.l
            )));
        }
    }
    if g.n() != pat.vertex_count() {
        return Err(CliError::Usage(format!(
            "graph has {} vertices, the pattern needs {}",
            g.n(),
            pat.vertex_count()
        )));
    }
    Ok((g, pat))
}

fn write_json<C: Serialize>(output: &Output, stamp: &Stamp<C>, data: &impl Serialize) -> Result<Verdict, CliError> {
    emit(output.out.as_deref(), &to_json(&stamp.wrap(data)))?;
    Ok(SUCCESS)
}

/// Prints `value` on stdout and writes the full record to `--out` if given.
fn write_scalar<C: Serialize>(
    output: &Output,
    stamp: &Stamp<C>,
    data: &impl Serialize,
    value: impl std::fmt::Display,
) -> Result<Verdict, CliError> {
    if let Some(path) = &output.out {
        emit(Some(path), &to_json(&stamp.wrap(data)))?;
    }
    println!("{value}");
    Ok(SUCCESS)
}

/// Writes the graph, plus a `.meta.json` sidecar holding `meta` when the
/// graph goes to a file.
fn write_graph<C: Serialize>(
    output: &GraphOutput,
    stamp: &Stamp<C>,
    g: &Graph,
    meta: &impl Serialize,
) -> Result<Verdict, CliError> {
    let path = output.out.as_deref();
    emit(path, &render_graph(g, output.format))?;
    if let Some(path) = path {
        emit(Some(&sidecar_path(path)), &to_json(&stamp.wrap(meta)))?;
    }
    Ok(SUCCESS)
}
