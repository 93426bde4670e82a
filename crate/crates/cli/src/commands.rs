use std::path::Path;

use ehrlab::constructions::{
    build_qi, build_qstar, choose_shifts, cyclic, left_facet, left_summand, middle_single, middle_star,
    pentagon, q0_piece, right_facet, right_summand, segment, ConstructionParams, CyclicConfig,
};
use ehrlab::latcount::{count as count_points, ehrhart as ehrhart_of, EhrhartResult};
use ehrlab::polygeom::Target;
use serde_json::{json, Value};

use crate::args::{BuildArgs, Construction, CountArgs, InputArgs};
use crate::config::Config;
use crate::{emit, usage, CliError, CliResult};

fn need<T>(v: Option<T>, flag: &str) -> CliResult<T> {
    v.ok_or_else(|| usage(format!("missing {flag}")))
}

fn positive(v: u64, flag: &str) -> CliResult<u64> {
    if v == 0 {
        Err(usage(format!("{flag} must be at least 1")))
    } else {
        Ok(v)
    }
}

fn single<T: Clone>(v: Option<crate::config::OneOrMany<T>>, flag: &str) -> CliResult<Option<T>> {
    match v.map(|x| x.to_vec()) {
        None => Ok(None),
        Some(xs) if xs.len() == 1 => Ok(Some(xs[0].clone())),
        Some(_) => Err(usage(format!("{flag} takes a single value here"))),
    }
}

struct BuildParams {
    p: Option<u64>,
    i: Option<usize>,
    dim: Option<usize>,
    k: Option<u64>,
    periods: Option<Vec<u64>>,
    t: Option<Vec<i64>>,
    shifts: Option<Vec<u64>>,
    base: Option<String>,
}

impl BuildParams {
    fn merge(a: &BuildArgs, c: &Config) -> CliResult<Self> {
        Ok(Self {
            p: a.p.or(single(c.p.clone(), "p")?),
            i: a.i.or(single(c.i.clone(), "i")?),
            dim: a.dim.or(c.dim),
            k: a.k.or(c.k),
            periods: a.periods.clone().or_else(|| c.periods.clone()),
            t: a.t.clone().or_else(|| c.t.clone()),
            shifts: a.shifts.clone().or_else(|| c.shifts.clone()),
            base: a.base.clone().or_else(|| c.base.clone()),
        })
    }

    fn p(&self) -> CliResult<u64> {
        positive(need(self.p, "--p")?, "--p")
    }

    fn k(&self) -> CliResult<u64> {
        positive(self.k.unwrap_or(1), "--k")
    }

    fn dim(&self) -> CliResult<usize> {
        let n = need(self.dim, "--dim")?;
        if n == 0 {
            return Err(usage("--dim must be at least 1"));
        }
        Ok(n)
    }

    fn cyclic(&self, n: usize) -> CliResult<CyclicConfig> {
        match &self.t {
            None => Ok(CyclicConfig::standard(n)),
            Some(t) => {
                if t.len() != n + 1 {
                    return Err(usage(format!("--T needs {} values for dimension {n}, got {}", n + 1, t.len())));
                }
                CyclicConfig::new(t.clone()).map_err(|e| usage(format!("--T: {e}")))
            }
        }
    }

    /// `1 <= i <= n-1`, as used by the summands and facets.
    fn summand_index(&self, n: usize) -> CliResult<usize> {
        let i = need(self.i, "--i")?;
        if n < 2 || i == 0 || i >= n {
            return Err(usage(format!("--i must lie in 1..={} for --dim {n}", n.saturating_sub(1))));
        }
        Ok(i)
    }

    fn params(&self) -> CliResult<ConstructionParams> {
        let periods = need(self.periods.clone(), "--periods")?;
        let n = self.dim.unwrap_or(periods.len());
        if periods.len() != n {
            return Err(usage(format!("--periods needs {n} values, got {}", periods.len())));
        }
        if n < 2 {
            return Err(usage("--dim must be at least 2 for the glued ball"));
        }
        if periods.contains(&0) {
            return Err(usage("--periods must all be at least 1"));
        }
        ConstructionParams::new(n, periods, Some(self.cyclic(n)?)).map_err(CliError::from)
    }

    fn shifts_for(&self, params: &ConstructionParams) -> CliResult<Vec<u64>> {
        match &self.shifts {
            Some(s) => {
                if s.len() != params.n || s.contains(&0) {
                    return Err(usage(format!("--shifts needs {} positive values", params.n)));
                }
                Ok(s.clone())
            }
            None => Ok(choose_shifts(params)?),
        }
    }
}

fn provenance(name: &str, n: Option<usize>, periods: Option<&[u64]>, t: Option<&[i64]>, shifts: Option<&[u64]>) -> Value {
    json!({
        "construction": name,
        "n": n,
        "periods": periods,
        "T": t,
        "shifts": shifts,
    })
}

fn construct(c: Construction, b: &BuildParams) -> CliResult<(Target, Value)> {
    let name = construction_name(c);
    let simple = |t: Target, n: Option<usize>, cfg: Option<&CyclicConfig>| {
        (t, provenance(&name, n, None, cfg.map(|c| c.nodes()), None))
    };
    Ok(match c {
        Construction::Segment => simple(segment(b.p()?)?.into(), Some(1), None),
        Construction::Pentagon => simple(pentagon(b.p()?)?.into(), Some(2), None),
        Construction::Cyclic => {
            let i = need(b.i, "--i")?;
            let n = b.dim.unwrap_or(i);
            if i == 0 || i > n {
                return Err(usage(format!("--i must lie in 1..={n}")));
            }
            let cfg = b.cyclic(n)?;
            simple(cyclic(&cfg, i)?.into(), Some(i), Some(&cfg))
        }
        Construction::Pyr => {
            let i = need(b.i, "--i")?;
            let base = match b.base.as_deref().unwrap_or("segment") {
                "segment" => segment(b.p()?)?,
                "pentagon" => pentagon(b.p()?)?,
                other => return Err(usage(format!("--base must be segment or pentagon, got {other:?}"))),
            };
            let p = base.pyr_power(i);
            let n = p.ambient_dim();
            simple(p.into(), Some(n), None)
        }
        Construction::Q0 => {
            let n = b.dim()?;
            simple(q0_piece(n, b.p()?, b.k()?)?.into(), Some(n), None)
        }
        Construction::Qi => {
            let n = b.dim()?;
            let i = need(b.i, "--i")?;
            if i >= n {
                return Err(usage(format!("--i must lie in 0..={}", n - 1)));
            }
            let cfg = b.cyclic(n)?;
            simple(build_qi(&cfg, n, i, b.p()?)?.into(), Some(n), Some(&cfg))
        }
        Construction::L | Construction::R | Construction::Lp | Construction::Rp | Construction::Mi => {
            let n = b.dim()?;
            let i = b.summand_index(n)?;
            let cfg = b.cyclic(n)?;
            let k = b.k()?;
            let p = match c {
                Construction::L => left_summand(&cfg, n, i, b.p()?, k)?,
                Construction::R => right_summand(&cfg, n, i, b.p()?, k)?,
                Construction::Lp => left_facet(&cfg, n, i, k)?,
                Construction::Rp => right_facet(&cfg, n, i, b.p()?, k)?,
                _ => middle_single(&cfg, n, i, b.p()?, k)?,
            };
            simple(p.into(), Some(n), Some(&cfg))
        }
        Construction::Qstar | Construction::M => {
            let params = b.params()?;
            let shifts = b.shifts_for(&params)?;
            let target: Target = if c == Construction::M {
                middle_star(&params, &shifts)?.into()
            } else {
                build_qstar(&params.clone().with_shifts(shifts.clone())?)?.into()
            };
            let prov = provenance(&name, Some(params.n), Some(&params.periods), Some(params.cyclic.nodes()), Some(&shifts));
            (target, prov)
        }
    })
}

fn construction_name(c: Construction) -> String {
    clap::ValueEnum::to_possible_value(&c).expect("no skipped variants").get_name().to_string()
}

pub fn summary(t: &Target) -> String {
    let pieces = t.pieces().len();
    format!(
        "dimension {}, {} piece{}, {} vertices, denominator {}",
        t.ambient_dim(),
        pieces,
        if pieces == 1 { "" } else { "s" },
        t.vertex_count(),
        t.denominator()
    )
}

pub fn build(a: &BuildArgs, c: &Config) -> CliResult<()> {
    let params = BuildParams::merge(a, c)?;
    let (target, prov) = construct(a.construction, &params)?;
    let mut doc = target.to_json_value();
    doc.as_object_mut()
        .expect("targets serialize as objects")
        .insert("provenance".into(), prov);
    let text = serde_json::to_string_pretty(&doc).expect("json value serializes");
    match &a.out {
        Some(path) => {
            std::fs::write(path, text + "\n").map_err(|e| usage(format!("--out {}: {e}", path.display())))?;
            emit(summary(&target));
        }
        None => {
            emit(&text);
            eprintln!("{}", summary(&target));
        }
    }
    Ok(())
}

pub fn read_target(path: &Path) -> CliResult<Target> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    Target::from_json_str(&text).map_err(|e| match CliError::from(e) {
        CliError::Usage(m) | CliError::Defect(m) => usage(format!("{}: {m}", path.display())),
    })
}

pub fn parse_range(s: &str) -> CliResult<(u64, u64)> {
    let bad = || usage(format!("--range must look like a..b with 1 <= a <= b, got {s:?}"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let a: u64 = a.trim().parse().map_err(|_| bad())?;
    let b: u64 = b.trim().parse().map_err(|_| bad())?;
    if a == 0 || a > b {
        return Err(bad());
    }
    Ok((a, b))
}

pub fn count(a: &CountArgs, c: &Config) -> CliResult<()> {
    let target = read_target(&a.input)?;
    let range = a.range.clone().or_else(|| c.range.clone());
    match (a.k.or(c.k), range) {
        (Some(k), None) => {
            emit(count_points(&target, positive(k, "--k")?)?);
        }
        (None, Some(r)) => {
            let (lo, hi) = parse_range(&r)?;
            for k in lo..=hi {
                emit(format_args!("{k},{}", count_points(&target, k)?));
            }
        }
        (Some(_), Some(_)) => return Err(usage("give either --k or --range, not both")),
        (None, None) => return Err(usage("missing --k or --range")),
    }
    Ok(())
}

fn count_value(c: u128) -> Value {
    match u64::try_from(c) {
        Ok(v) => json!(v),
        Err(_) => json!(c.to_string()),
    }
}

pub fn validation_record(r: &EhrhartResult) -> Value {
    let pairs = |v: &[(u64, u128)]| -> Vec<Value> { v.iter().map(|&(k, c)| json!([k, count_value(c)])).collect() };
    json!({
        "period_used": r.period_used,
        "samples": pairs(&r.samples_used),
        "validation_points": pairs(&r.validation_points),
    })
}

pub fn ehrhart(a: &InputArgs) -> CliResult<()> {
    let result = ehrhart_of(&read_target(&a.input)?)?;
    let doc = json!({
        "quasi_polynomial": serde_json::to_value(&result.qp).expect("quasi-polynomial serializes"),
        "validation": validation_record(&result),
    });
    emit(serde_json::to_string_pretty(&doc).expect("json value serializes"));
    Ok(())
}

pub fn periods(a: &InputArgs) -> CliResult<()> {
    let result = ehrhart_of(&read_target(&a.input)?)?;
    emit(result.qp.period_sequence());
    emit(validation_record(&result));
    Ok(())
}
