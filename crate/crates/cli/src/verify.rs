//! Verification suites. Each case records what was expected, where that
//! expectation comes from (`basis`), what was computed, and the wall time.

use std::time::Instant;

use ehrlab::constructions::{build_qi, build_qstar, choose_shifts, cyclic, cyclic_volume, pentagon, segment, ConstructionParams, CyclicConfig};
use ehrlab::latcount::{ehrhart, leading_volume};
use ehrlab::polygeom::Target;
use ehrlab::qpalg::{PeriodSequence, QuasiPolynomial};
use ehrlab::rational::format_rational;
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{Suite, VerifyArgs};
use crate::config::Config;
use crate::{emit, usage, CliResult};

#[derive(Clone, Debug, Serialize)]
pub struct Case {
    pub params: Value,
    pub expected: Value,
    pub actual: Value,
    pub pass: bool,
    pub wall_ms: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub cases: Vec<Case>,
    pub all_pass: bool,
}

/// Grid for each suite after merging flags, config and defaults.
#[derive(Clone, Debug)]
pub struct Grid {
    pub t: Vec<i64>,
    pub max_i: usize,
    pub p: Option<Vec<u64>>,
    pub i: Option<Vec<usize>>,
    pub dim: Option<usize>,
    pub periods: Option<Vec<u64>>,
}

impl Grid {
    pub fn merge(a: &VerifyArgs, c: &Config) -> Self {
        Self {
            t: a.t.clone().or_else(|| c.t.clone()).unwrap_or_else(|| vec![0, 1, 2, 3]),
            max_i: a.max_i.or(c.max_i).unwrap_or(3),
            p: a.p.clone().or_else(|| c.p.as_ref().map(|x| x.to_vec())),
            i: a.i.clone().or_else(|| c.i.as_ref().map(|x| x.to_vec())),
            dim: a.dim.or(c.dim),
            periods: a.periods.clone().or_else(|| c.periods.clone()),
        }
    }

    pub fn defaults() -> Self {
        Self { t: vec![0, 1, 2, 3], max_i: 3, p: None, i: None, dim: None, periods: None }
    }
}

fn timed(params: Value, expected: Value, f: impl FnOnce() -> CliResult<(Value, bool)>) -> CliResult<Case> {
    let start = Instant::now();
    let (actual, pass) = f()?;
    Ok(Case { params, expected, actual, pass, wall_ms: start.elapsed().as_millis() as u64 })
}

fn qp(t: impl Into<Target>) -> CliResult<QuasiPolynomial> {
    Ok(ehrhart(&t.into())?.qp)
}

fn qp_json(q: &QuasiPolynomial) -> Value {
    serde_json::to_value(q).expect("quasi-polynomial serializes")
}

fn periods_string(p: &[usize]) -> String {
    PeriodSequence(p.to_vec()).to_string()
}

fn nonzero(xs: &[u64], flag: &str) -> CliResult<()> {
    if xs.contains(&0) {
        return Err(usage(format!("{flag} values must be at least 1")));
    }
    Ok(())
}

fn liu(g: &Grid) -> CliResult<Vec<Case>> {
    let cfg = CyclicConfig::new(g.t.clone()).map_err(|e| usage(format!("--T: {e}")))?;
    if g.max_i == 0 || g.max_i > cfg.n() {
        return Err(usage(format!("--max-i must lie in 1..={} for --T of length {}", cfg.n(), cfg.n() + 1)));
    }
    let mut prev = qp(cyclic(&cfg, 0)?)?;
    let mut cases = Vec::new();
    for i in 1..=g.max_i {
        let vol = cyclic_volume(&cfg, i)?;
        let want = QuasiPolynomial::monomial(vol.clone(), i);
        let expected = json!({
            "difference": qp_json(&want),
            "volume": format_rational(&vol),
            "basis": "Ehr(C_i) - Ehr(C_{i-1}) = Vol(C_i) t^i, volume from a triangulation",
        });
        let c = cyclic(&cfg, i)?;
        let mut cur = None;
        let case = timed(json!({"T": cfg.nodes(), "i": i}), expected, || {
            let q = qp(c.clone())?;
            let diff = &q - &prev;
            let lead = leading_volume(&Target::from(c.clone()))?;
            let pass = diff == want && lead == vol;
            cur = Some(q);
            Ok((json!({"difference": qp_json(&diff), "leading_volume": format_rational(&lead)}), pass))
        })?;
        prev = cur.expect("set by the case");
        cases.push(case);
    }
    Ok(cases)
}

fn complement(name: &str, ps: &[u64], is: &[usize]) -> CliResult<Vec<Case>> {
    let mut cases = Vec::new();
    for &p in ps {
        for &i in is {
            let params = if name == "pentagon" { json!({"p": p}) } else { json!({"p": p, "i": i}) };
            let expected = json!({"equivalent": true, "basis": "Ehr(Pyr^i(pentagon)) ≡ -Ehr(Pyr^i(segment))"});
            cases.push(timed(params, expected, || {
                let a = qp(pentagon(p)?.pyr_power(i))?;
                let b = qp(segment(p)?.pyr_power(i))?;
                let eq = a.equivalent(&-&b);
                Ok((json!({"equivalent": eq, "pentagon": qp_json(&a), "segment": qp_json(&b)}), eq))
            })?);
        }
    }
    Ok(cases)
}

fn periods_case(params: Value, want: Vec<usize>, basis: &str, build: impl FnOnce() -> CliResult<Target>) -> CliResult<Case> {
    let expected = json!({"periods": periods_string(&want), "basis": basis});
    timed(params, expected, || {
        let got = qp(build()?)?.period_sequence();
        let pass = got.0 == want;
        Ok((json!({"periods": got.to_string()}), pass))
    })
}

fn bsw(g: &Grid) -> CliResult<Vec<Case>> {
    let ps = g.p.clone().unwrap_or_else(|| vec![1, 2, 3, 4]);
    nonzero(&ps, "--p")?;
    let is = g.i.clone().unwrap_or_else(|| (0..=g.max_i).collect());
    let mut cases = Vec::new();
    for &p in &ps {
        for &i in &is {
            let mut want = vec![1; i + 2];
            want[0] = p as usize;
            let basis = "constant term has period p, all others constant";
            cases.push(periods_case(json!({"p": p, "i": i}), want, basis, || {
                Ok(segment(p)?.pyr_power(i).into())
            })?);
        }
    }
    Ok(cases)
}

fn qi(g: &Grid) -> CliResult<Vec<Case>> {
    let n = g.dim.unwrap_or(3);
    if n < 2 {
        return Err(usage("--dim must be at least 2"));
    }
    let cfg = if g.t.len() == n + 1 {
        CyclicConfig::new(g.t.clone()).map_err(|e| usage(format!("--T: {e}")))?
    } else {
        CyclicConfig::standard(n)
    };
    let ps = g.p.clone().unwrap_or_else(|| vec![2, 3]);
    nonzero(&ps, "--p")?;
    let is = g.i.clone().unwrap_or_else(|| (1..n).collect());
    if let Some(&bad) = is.iter().find(|&&i| i >= n) {
        return Err(usage(format!("--i value {bad} must be below --dim {n}")));
    }
    let mut cases = Vec::new();
    for &i in &is {
        for &p in &ps {
            let mut want = vec![1; n + 1];
            want[i] = p as usize;
            let basis = "only the coefficient of t^i is periodic, with period p";
            cases.push(periods_case(json!({"n": n, "i": i, "p": p, "T": cfg.nodes()}), want, basis, || {
                Ok(build_qi(&cfg, n, i, p)?.into())
            })?);
        }
    }
    Ok(cases)
}

fn qstar(g: &Grid) -> CliResult<Vec<Case>> {
    let grid: Vec<Vec<u64>> = match (&g.periods, g.dim) {
        (Some(p), _) => vec![p.clone()],
        (None, Some(2)) => vec![vec![2, 3]],
        (None, Some(3)) => vec![vec![2, 3, 2], vec![1, 1, 1]],
        (None, Some(n)) => return Err(usage(format!("no default --periods for --dim {n}"))),
        (None, None) => vec![vec![2, 3], vec![2, 3, 2], vec![1, 1, 1]],
    };
    let mut cases = Vec::new();
    for periods in grid {
        let n = periods.len();
        if g.dim.is_some_and(|d| d != n) {
            return Err(usage(format!("--periods has {n} values but --dim is {}", g.dim.unwrap())));
        }
        if n < 2 {
            return Err(usage("--periods needs at least 2 values"));
        }
        nonzero(&periods, "--periods")?;
        let cfg = if g.t.len() == n + 1 {
            CyclicConfig::new(g.t.clone()).map_err(|e| usage(format!("--T: {e}")))?
        } else {
            CyclicConfig::standard(n)
        };
        let params = ConstructionParams::new(n, periods.clone(), Some(cfg))?;
        let shifts = choose_shifts(&params)?;
        let params = params.with_shifts(shifts.clone())?;
        let mut want: Vec<usize> = periods.iter().map(|&p| p as usize).collect();
        want.push(1);
        let basis = "coefficient of t^j has period p_j, leading coefficient constant";
        let case_params = json!({"n": n, "periods": periods, "T": params.cyclic.nodes(), "shifts": shifts});
        let case = periods_case(case_params, want, basis, || Ok(build_qstar(&params)?.into()))?;
        cases.push(case);
    }
    Ok(cases)
}

fn suite_cases(suite: Suite, g: &Grid) -> CliResult<Vec<Case>> {
    match suite {
        Suite::Liu => liu(g),
        Suite::Pentagon => {
            let ps = g.p.clone().unwrap_or_else(|| vec![1, 2, 3, 4, 5]);
            nonzero(&ps, "--p")?;
            complement("pentagon", &ps, &[0])
        }
        Suite::Pyramids => {
            let ps = g.p.clone().unwrap_or_else(|| vec![2, 3]);
            nonzero(&ps, "--p")?;
            let is = g.i.clone().unwrap_or_else(|| vec![0, 1, 2]);
            complement("pyramids", &ps, &is)
        }
        Suite::Bsw => bsw(g),
        Suite::Qi => qi(g),
        Suite::Qstar => qstar(g),
        Suite::All => {
            let mut all = Vec::new();
            let d = Grid::defaults();
            for (name, s) in [
                ("liu", Suite::Liu),
                ("pentagon", Suite::Pentagon),
                ("pyramids", Suite::Pyramids),
                ("bsw", Suite::Bsw),
                ("qi", Suite::Qi),
                ("qstar", Suite::Qstar),
            ] {
                for mut case in suite_cases(s, &d)? {
                    case.params["suite"] = json!(name);
                    all.push(case);
                }
            }
            Ok(all)
        }
    }
}

pub fn report(suite: Suite, g: &Grid) -> CliResult<Report> {
    let cases = suite_cases(suite, g)?;
    let name = clap::ValueEnum::to_possible_value(&suite).expect("no skipped variants").get_name().to_string();
    let all_pass = cases.iter().all(|c| c.pass);
    Ok(Report { suite: name, cases, all_pass })
}

/// Prints the report and returns whether every case passed.
pub fn run(a: &VerifyArgs, c: &Config) -> CliResult<bool> {
    let r = report(a.suite, &Grid::merge(a, c))?;
    emit(serde_json::to_string_pretty(&r).expect("report serializes"));
    Ok(r.all_pass)
}
