use serde_json::json;
use wgcoe_core::coe::{
    coe_asymptotics, coe_diag_moment_closed, coe_method, coe_methods, coe_offdiag_moment, coe_offdiag_w,
    coe_trace_moments_degree2, CoeMomentSpec, CoeQuery, Entry, TraceMoment,
};
use wgcoe_core::combinatorics::{IndexSequence, Partition};
use wgcoe_core::exact::RationalFunction;
use wgcoe_core::identities::run_identities;
use wgcoe_core::sampling::{ensemble, gaussian_limit_check, MomentSpec, SampleRun, Z_PASS};
use wgcoe_core::unitary::{cue_diagonal_moment, cue_joint_moment, cue_row_moment, CueMomentSpec};
use wgcoe_core::weingarten::wg;
use wgcoe_core::{Error, Evaluation, Exact, Regime, Result};

use crate::output::{estimate_table, json, limit_table, table, ExactOutput, Output};
use crate::{Cli, CoeCommand, Command, CueCommand, EntryArg, EvalArgs};

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Resource { .. } => 2,
        Error::Verification(_) => 3,
        _ => 1,
    }
}

fn evaluation(args: &EvalArgs) -> Result<Evaluation> {
    match args.big_n {
        Some(_) if args.series.is_some() => Err(Error::Domain("--series needs a symbolic result; drop --N".into())),
        Some(0) => Err(Error::Domain("N must be a positive integer".into())),
        Some(n) => Ok(Evaluation::At(n)),
        None => Ok(Evaluation::Symbolic),
    }
}

fn of_function(f: RationalFunction, eval: Evaluation) -> Result<Exact> {
    Ok(match eval {
        Evaluation::Symbolic => Exact::Function(f),
        Evaluation::At(n) => Exact::Number {
            value: f.eval(n)?,
            regime: Regime::Symbolic,
        },
    })
}

fn entry(e: EntryArg) -> Entry {
    match e {
        EntryArg::Diagonal => Entry::Diagonal,
        EntryArg::Offdiagonal => Entry::OffDiagonal,
    }
}

fn exact_output(command: &'static str, spec: serde_json::Value, args: &EvalArgs, value: Exact) -> Result<ExactOutput> {
    let series = match (args.series, value.function()) {
        (Some(k), Some(f)) => Some(f.series(k)?.to_string()),
        _ => None,
    };
    Ok(ExactOutput {
        command,
        spec,
        big_n: args.big_n,
        regime: value.regime(),
        value: value.to_string(),
        rational_function: value.function().cloned(),
        series,
    })
}

fn render(as_json: bool, out: &ExactOutput) -> Output {
    Output::ok(if as_json { json(out) } else { out.text() })
}

fn seq(s: &str) -> Result<IndexSequence> {
    s.parse()
}

fn part(s: &str) -> Result<Partition> {
    s.parse()
}

pub fn run(cli: &Cli) -> Result<Output> {
    let as_json = cli.json;
    match &cli.command {
        Command::Wg { n, cycle_type, eval } => {
            let rho = part(cycle_type)?;
            let value = wg(*n, &rho, evaluation(eval)?)?;
            let spec = json!({ "n": n, "cycle_type": rho.to_string() });
            Ok(render(as_json, &exact_output("wg", spec, eval, value)?))
        }
        Command::CueMoment { which } => cue(as_json, which),
        Command::CoeMoment { which } => coe(as_json, which),
        Command::TraceMoments { which, eval } => {
            let kinds: Vec<TraceMoment> = match which {
                Some(w) => vec![w.parse()?],
                None => TraceMoment::ALL.to_vec(),
            };
            let e = evaluation(eval)?;
            let mut outs = Vec::new();
            for t in kinds {
                let value = of_function(coe_trace_moments_degree2(t)?, e)?;
                outs.push(exact_output("trace-moments", json!({ "which": t.name() }), eval, value)?);
            }
            Ok(Output::ok(if as_json {
                json(&json!({ "command": "trace-moments", "results": outs }))
            } else {
                outs.iter().map(|o| format!("{}: {}", o.spec["which"].as_str().unwrap_or(""), o.text())).collect()
            }))
        }
        Command::Identities { max_n, suites } => {
            let checks = run_identities(*max_n, suites)?;
            let failed = checks.iter().filter(|c| !c.passed).count();
            let text = if as_json {
                json(&json!({ "command": "identities", "max_n": max_n, "passed": failed == 0, "checks": checks }))
            } else {
                let rows: Vec<Vec<String>> = checks
                    .iter()
                    .map(|c| {
                        let status = if c.passed { "PASS" } else { "FAIL" };
                        vec![c.suite.to_string(), c.n.to_string(), status.to_string(), c.detail.clone()]
                    })
                    .collect();
                table(&["suite", "n", "status", "detail"], &rows)
            };
            Ok(Output {
                text,
                code: if failed == 0 { 0 } else { 3 },
            })
        }
        Command::Sample {
            ensemble: name,
            big_n,
            samples,
            seed,
            specs,
            verify,
            gate,
        } => {
            let ens = ensemble(name)?;
            let specs: Vec<MomentSpec> = specs.iter().map(|s| s.parse()).collect::<Result<_>>()?;
            let mut run = SampleRun::new(*big_n, *samples, *seed);
            if *verify {
                run = run.verified();
            }
            let reports = run.estimate(ens, &specs)?;
            let failed = *gate && reports.iter().any(|r| r.z_score.is_some_and(|z| !(z < Z_PASS)));
            let text = if as_json {
                json(&json!({ "command": "sample", "reports": reports }))
            } else {
                estimate_table(&reports)
            };
            Ok(Output {
                text,
                code: if failed { 3 } else { 0 },
            })
        }
        Command::GaussianLimit {
            entry: e,
            n,
            dims,
            samples,
            seed,
        } => {
            let report = gaussian_limit_check(entry(*e), *n, dims, *samples, *seed)?;
            Ok(Output::ok(if as_json {
                let mut v = serde_json::to_value(&report).expect("serializable report");
                v["command"] = json!("gaussian-limit");
                json(&v)
            } else {
                limit_table(&report)
            }))
        }
    }
}

fn cue(as_json: bool, which: &CueCommand) -> Result<Output> {
    let (spec, eval, value) = match which {
        CueCommand::Joint {
            i,
            j,
            i_prime,
            j_prime,
            eval,
        } => {
            let spec = CueMomentSpec::new(seq(i)?, seq(j)?, seq(i_prime)?, seq(j_prime)?)?;
            let echo = json!({
                "kind": "joint",
                "i": spec.i.to_string(),
                "j": spec.j.to_string(),
                "i_prime": spec.i_prime.to_string(),
                "j_prime": spec.j_prime.to_string(),
            });
            (echo, eval, cue_joint_moment(&spec, evaluation(eval)?)?)
        }
        CueCommand::Row { mu, eval } => {
            let mu = part(mu)?;
            let e = evaluation(eval)?;
            if let Evaluation::At(n) = e {
                if (mu.len() as u64) > n {
                    return Err(Error::Domain(format!("a row sequence of type {mu} needs N >= {}", mu.len())));
                }
            }
            let value = of_function(cue_row_moment(&mu)?, e)?;
            (json!({ "kind": "row", "mu": mu.to_string() }), eval, value)
        }
        CueCommand::Diagonal { mu, eval } => {
            let mu = part(mu)?;
            let value = cue_diagonal_moment(&mu, evaluation(eval)?)?;
            (json!({ "kind": "diagonal", "mu": mu.to_string() }), eval, value)
        }
    };
    Ok(render(as_json, &exact_output("cue-moment", spec, eval, value)?))
}

fn coe(as_json: bool, which: &CoeCommand) -> Result<Output> {
    let (spec, eval, value) = match which {
        CoeCommand::Diag { n, method, eval } => {
            let value = coe_method(method)?.compute(&CoeQuery::Diagonal { n: *n }, evaluation(eval)?)?;
            (json!({ "kind": "diag", "n": n, "method": method }), eval, value)
        }
        CoeCommand::Off { n, method, eval } => {
            let value = coe_method(method)?.compute(&CoeQuery::OffDiagonal { n: *n }, evaluation(eval)?)?;
            (json!({ "kind": "off", "n": n, "method": method }), eval, value)
        }
        CoeCommand::Joint { j, j_prime, method, eval } => {
            let spec = CoeMomentSpec::new(seq(j)?, seq(j_prime)?)?;
            let echo = json!({
                "kind": "joint",
                "j": spec.j.to_string(),
                "j_prime": spec.j_prime.to_string(),
                "method": method,
            });
            let value = coe_method(method)?.compute(&CoeQuery::Joint(spec), evaluation(eval)?)?;
            (echo, eval, value)
        }
        CoeCommand::W { mu, eval } => {
            let mu = part(mu)?;
            let value = coe_offdiag_w(&mu, evaluation(eval)?)?;
            (json!({ "kind": "w", "mu": mu.to_string() }), eval, value)
        }
        CoeCommand::Asymptotics { entry: e, n } => return asymptotics(as_json, *e, *n),
        CoeCommand::Methods => {
            let methods: Vec<serde_json::Value> = coe_methods()
                .iter()
                .map(|m| json!({ "name": m.name(), "description": m.description() }))
                .collect();
            return Ok(Output::ok(if as_json {
                json(&json!({ "command": "coe-moment", "methods": methods }))
            } else {
                let rows: Vec<Vec<String>> = coe_methods()
                    .iter()
                    .map(|m| vec![m.name().to_string(), m.description().to_string()])
                    .collect();
                table(&["method", "description"], &rows)
            }));
        }
    };
    Ok(render(as_json, &exact_output("coe-moment", spec, eval, value)?))
}

fn asymptotics(as_json: bool, e: EntryArg, n: usize) -> Result<Output> {
    let expected = coe_asymptotics(n, entry(e))?;
    let exact = match e {
        EntryArg::Diagonal => coe_diag_moment_closed(n)?,
        EntryArg::Offdiagonal => coe_offdiag_moment(n, Evaluation::Symbolic)?
            .into_function()
            .expect("symbolic"),
    };
    let series = exact.series(2)?;
    let agrees = series == expected;
    let name = match e {
        EntryArg::Diagonal => "diagonal",
        EntryArg::Offdiagonal => "offdiagonal",
    };
    let text = if as_json {
        json(&json!({
            "command": "coe-moment",
            "spec": { "kind": "asymptotics", "entry": name, "n": n },
            "expansion": expected.to_string(),
            "exact_series": series.to_string(),
            "rational_function": exact,
            "agrees": agrees,
        }))
    } else {
        format!("expansion:    {expected}\nexact series: {series}\nagrees: {agrees}\n")
    };
    Ok(Output {
        text,
        code: if agrees { 0 } else { 3 },
    })
}
