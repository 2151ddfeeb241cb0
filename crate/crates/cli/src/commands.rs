use std::fs::File;
use std::io::{self, BufReader};

use anyhow::Result;
use num_bigint::BigUint;
use serde::Serialize;

use hyperham_core::bounds::gpw_upper_bound;
use hyperham_core::experiment::{run_verify, sweep_row, SweepRow, VerifyOptions, SWEEP_HEADER};
use hyperham_core::io::{read_text, to_text};
use hyperham_core::rational::{self, display, from_int, json_biguint};
use hyperham_core::search::SearchOutcome;
use hyperham_core::{
    build_general, build_space_barrier, exact_min_degree_formula, find_hamilton_ell_cycle,
    find_hamilton_ell_path, find_perfect_matching, BoundReport, CycleCertificate, DegreeProfile,
    ExtremalSpec, Hypergraph, MatchingCertificate, Rational, TraversalKind, VertexSet,
    MAX_VERTICES,
};

use crate::{
    usage, BoundsArgs, ConstructArgs, DegreeArgs, Format, GlobalArgs, GraphArgs, SpecArgs,
    SweepArgs, VerifyArgs, EXIT_BUDGET,
};

impl SpecArgs {
    fn spec(&self) -> Result<ExtremalSpec> {
        let spec = ExtremalSpec::new(
            required(self.n, "n")?,
            required(self.k, "k")?,
            required(self.ell, "ell")?,
            required(self.j, "j")?,
            required(self.x_size, "x-size")?,
        )
        .map_err(usage)?;
        Ok(spec)
    }

    fn space_barrier(&self) -> Result<Hypergraph> {
        build_space_barrier(
            required(self.n, "n")?,
            required(self.k, "k")?,
            required(self.x_size, "x-size")?,
        )
        .map_err(usage)
    }
}

fn required<T>(v: Option<T>, name: &str) -> Result<T> {
    v.ok_or_else(|| usage(format!("--{name} is required")))
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)?)
}

struct Loaded {
    h: Hypergraph,
    spec: Option<ExtremalSpec>,
    ell: Option<usize>,
}

fn load(a: &GraphArgs) -> Result<Loaded> {
    if let Some(path) = &a.input {
        let s = &a.spec;
        if a.space_barrier || s.n.is_some() || s.k.is_some() || s.j.is_some() || s.x_size.is_some()
        {
            return Err(usage(
                "--input cannot be combined with construction flags other than --ell",
            ));
        }
        let parsed = if path.as_os_str() == "-" {
            read_text(io::stdin().lock())
        } else {
            let file = File::open(path)
                .map_err(|e| usage(format!("cannot open {}: {e}", path.display())))?;
            read_text(BufReader::new(file))
        };
        let h = parsed.map_err(|e| usage(format!("{}: {e}", path.display())))?;
        return Ok(Loaded {
            h,
            spec: None,
            ell: s.ell,
        });
    }
    if a.space_barrier {
        return Ok(Loaded {
            h: a.spec.space_barrier()?,
            spec: None,
            ell: a.spec.ell,
        });
    }
    let spec = a.spec.spec()?;
    Ok(Loaded {
        h: build_general(&spec).map_err(usage)?,
        spec: Some(spec),
        ell: Some(spec.ell),
    })
}

#[derive(Serialize)]
struct GraphJson<'a> {
    #[serde(skip_serializing_if = "Option::is_none")]
    spec: Option<ExtremalSpec>,
    n: usize,
    k: usize,
    edge_count: usize,
    edges: &'a [VertexSet],
}

pub fn construct(g: &GlobalArgs, a: &ConstructArgs) -> Result<u8> {
    let (h, spec) = if a.space_barrier {
        (a.spec.space_barrier()?, None)
    } else {
        let spec = a.spec.spec()?;
        (build_general(&spec).map_err(usage)?, Some(spec))
    };
    eprintln!("edges: {}", h.edge_count());
    if let Some(spec) = &spec {
        let (lo, hi) = spec.window_bounds();
        let n = from_int(spec.n as i64);
        let (lo, hi) = (display(&(lo * &n)), display(&(hi * &n)));
        if spec.in_window() {
            eprintln!("window: {lo} < x_size = {} < {hi}", spec.x_size);
        } else {
            eprintln!(
                "warning: x_size = {} outside window ({lo}, {hi}) for n = {}",
                spec.x_size, spec.n
            );
        }
    }
    match g.format {
        None => g.emit(&to_text(&h)),
        Some(Format::Json) => g.emit(&to_json(&GraphJson {
            spec,
            n: h.n(),
            k: h.k(),
            edge_count: h.edge_count(),
            edges: h.edges(),
        })?),
        Some(Format::Csv) => Err(usage("construct writes the text format or JSON")),
    }?;
    Ok(0)
}

#[derive(Serialize)]
struct DegreeRow {
    #[serde(flatten)]
    profile: DegreeProfile,
    #[serde(with = "rational::json")]
    ratio: Rational,
    #[serde(skip_serializing_if = "Option::is_none", with = "opt_biguint")]
    formula: Option<BigUint>,
}

mod opt_biguint {
    use super::*;

    pub fn serialize<S: serde::Serializer>(v: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => json_biguint::serialize(v, s),
            None => s.serialize_none(),
        }
    }
}

#[derive(Serialize)]
struct DegreeReport {
    n: usize,
    k: usize,
    edge_count: usize,
    degrees: Vec<DegreeRow>,
}

pub fn degree(g: &GlobalArgs, a: &DegreeArgs) -> Result<u8> {
    let Loaded { h, spec, .. } = load(&a.graph)?;
    let ds: Vec<usize> = match a.d {
        Some(d) => vec![d],
        None => (1..h.k()).collect(),
    };
    let mut degrees = Vec::new();
    for d in ds {
        let profile = h.min_d_degree(d).map_err(usage)?;
        let formula = match &spec {
            Some(s) => Some(exact_min_degree_formula(s, d).map_err(usage)?.min_degree),
            None => None,
        };
        degrees.push(DegreeRow {
            ratio: hyperham_core::constructions::degree_ratio(&profile, h.n(), h.k()),
            profile,
            formula,
        });
    }
    let report = DegreeReport {
        n: h.n(),
        k: h.k(),
        edge_count: h.edge_count(),
        degrees,
    };
    match g.format.unwrap_or(Format::Json) {
        Format::Json => g.emit(&to_json(&report)?)?,
        Format::Csv => {
            let mut out = String::from("d,min_degree,ratio,witness,formula\n");
            for r in &report.degrees {
                out += &format!(
                    "{},{},{},{},{}\n",
                    r.profile.d,
                    r.profile.min_degree,
                    display(&r.ratio),
                    join(&r.profile.witness, " "),
                    r.formula
                        .as_ref()
                        .map(|f| f.to_string())
                        .unwrap_or_default()
                );
            }
            g.emit(&out)?;
        }
    }
    Ok(0)
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

#[derive(Serialize)]
struct SearchReport<'a, C: Serialize> {
    target: &'static str,
    n: usize,
    k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    ell: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    spec: Option<ExtremalSpec>,
    #[serde(flatten)]
    outcome: &'a SearchOutcome<C>,
}

fn emit_search<C: Serialize>(
    g: &GlobalArgs,
    report: &SearchReport<'_, C>,
    certificate: impl Fn(&C) -> String,
) -> Result<u8> {
    let out = report.outcome;
    eprintln!("elapsed: {:.3}s", out.stats.elapsed.as_secs_f64());
    match g.format.unwrap_or(Format::Json) {
        Format::Json => g.emit(&to_json(report)?)?,
        Format::Csv => g.emit(&format!(
            "target,n,k,ell,status,nodes,dp_states,certificate\n{},{},{},{},{},{},{},{}\n",
            report.target,
            report.n,
            report.k,
            report.ell.map(|l| l.to_string()).unwrap_or_default(),
            out.status(),
            out.stats.nodes,
            out.stats.dp_states,
            out.certificate().map(certificate).unwrap_or_default()
        ))?,
    }
    Ok(if out.is_budget() { EXIT_BUDGET } else { 0 })
}

pub fn traversal(g: &GlobalArgs, a: &GraphArgs, kind: TraversalKind) -> Result<u8> {
    let Loaded { h, spec, ell } = load(a)?;
    let ell = required(ell, "ell")?;
    let config = g.search_config()?;
    let (target, outcome) = match kind {
        TraversalKind::Cycle => ("cycle", find_hamilton_ell_cycle(&h, ell, &config)),
        TraversalKind::Path => ("path", find_hamilton_ell_path(&h, ell, &config)),
    };
    let outcome = outcome.map_err(usage)?;
    let report = SearchReport {
        target,
        n: h.n(),
        k: h.k(),
        ell: Some(ell),
        spec,
        outcome: &outcome,
    };
    emit_search(g, &report, |c: &CycleCertificate| join(&c.order, " "))
}

pub fn matching(g: &GlobalArgs, a: &GraphArgs) -> Result<u8> {
    let Loaded { h, spec, .. } = load(a)?;
    let config = g.search_config()?;
    let outcome = find_perfect_matching(&h, &config).map_err(usage)?;
    let report = SearchReport {
        target: "matching",
        n: h.n(),
        k: h.k(),
        ell: None,
        spec,
        outcome: &outcome,
    };
    emit_search(g, &report, |m: &MatchingCertificate| {
        m.edges
            .iter()
            .map(|e| join(&e.to_vec(), " "))
            .collect::<Vec<_>>()
            .join(";")
    })
}

#[derive(Serialize)]
struct BoundsRow {
    #[serde(flatten)]
    report: BoundReport,
    beats_matching_conjecture: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    gpw_upper_bound: Option<rational::JsonRational>,
}

const BOUNDS_HEADER: &str = "k,ell,d,t,f_t,b_window,thm14_ratio,thm15_ratio,space_barrier_ratio,matching_conj_ratio,sqrt_gap_squared,beats_matching_conjecture";

impl BoundsRow {
    fn csv_line(&self) -> String {
        let r = &self.report;
        let mut line = format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            r.k,
            r.ell,
            r.d,
            r.t,
            display(&r.f_t),
            r.b_window,
            display(&r.thm14_ratio),
            display(&r.thm15_ratio),
            display(&r.space_barrier_ratio),
            display(&r.matching_conj_ratio),
            display(&r.sqrt_bound.gap_squared),
            self.beats_matching_conjecture
        );
        if let Some(c) = &self.gpw_upper_bound {
            line += &format!(",{}", display(&c.0));
        }
        line
    }
}

pub fn bounds(g: &GlobalArgs, a: &BoundsArgs) -> Result<u8> {
    let c: Option<Rational> = match &a.gpw_c {
        Some(s) => Some(
            s.parse()
                .map_err(|_| usage(format!("--gpw-c: cannot parse '{s}' as p/q")))?,
        ),
        None => None,
    };
    let (k_lo, k_hi) =
        a.k.bounded()
            .ok_or_else(|| usage("--k needs a value or a range"))?;
    let mut rows = Vec::new();
    for k in k_lo.max(2)..=k_hi {
        let k = k as usize;
        for ell in a.ell.for_k(k) {
            for d in a.d.within(1, k as i64 - 1) {
                let report = BoundReport::new(k, ell, d as usize).map_err(usage)?;
                let gpw_upper_bound = match &c {
                    Some(c) => Some(rational::JsonRational(
                        gpw_upper_bound(k, c).map_err(usage)?,
                    )),
                    None => None,
                };
                rows.push(BoundsRow {
                    beats_matching_conjecture: report.beats_matching_conjecture(),
                    report,
                    gpw_upper_bound,
                });
            }
        }
    }
    let header = if c.is_some() {
        format!("{BOUNDS_HEADER},gpw_upper_bound")
    } else {
        BOUNDS_HEADER.to_string()
    };
    let csv = |rows: &[BoundsRow]| {
        let mut out = header.clone() + "\n";
        for r in rows {
            out += &r.csv_line();
            out.push('\n');
        }
        out
    };
    if a.table {
        match g.format.unwrap_or(Format::Csv) {
            Format::Csv => g.emit(&csv(&rows))?,
            Format::Json => g.emit(&to_json(&rows)?)?,
        }
    } else {
        if rows.len() != 1 {
            return Err(usage(format!(
                "k = {}, ell, d select {} combinations; use --table for ranges",
                a.k,
                rows.len()
            )));
        }
        match g.format.unwrap_or(Format::Json) {
            Format::Json => g.emit(&to_json(&rows[0])?)?,
            Format::Csv => g.emit(&csv(&rows))?,
        }
    }
    Ok(0)
}

pub fn verify(g: &GlobalArgs, a: &VerifyArgs) -> Result<u8> {
    let spec = a.spec.spec()?;
    if spec.n > MAX_VERTICES {
        return Err(usage(format!(
            "verify builds the hypergraph; n = {} exceeds {MAX_VERTICES}",
            spec.n
        )));
    }
    let opts = VerifyOptions {
        d: a.d,
        path: a.path,
        matching: !a.no_matching,
        search: g.search_config()?,
    };
    let report = run_verify(&spec, &opts).map_err(usage)?;
    if let Some(o) = report.searches.cycle.outcome() {
        eprintln!("cycle search: {:.3}s", o.stats.elapsed.as_secs_f64());
    }
    match g.format.unwrap_or(Format::Json) {
        Format::Json => g.emit(&to_json(&report)?)?,
        Format::Csv => {
            let v = &report.verdicts;
            let status = |s: Option<&str>| s.unwrap_or("").to_string();
            let s = &report.searches;
            g.emit(&format!(
                "n,k,ell,j,x_size,d,in_window,edge_count,min_degree,formula_min_degree,finite_ratio,cycle,path,matching,expectations_met\n\
                 {},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
                spec.n,
                spec.k,
                spec.ell,
                spec.j,
                spec.x_size,
                report.d,
                spec.in_window(),
                report.edge_count,
                report.min_degree.bruteforce.min_degree,
                report.min_degree.formula.min_degree,
                display(&report.finite_ratio),
                status(s.cycle.outcome().map(|o| o.status())),
                status(s.path.as_ref().and_then(|p| p.outcome()).map(|o| o.status())),
                status(s.matching.as_ref().and_then(|m| m.outcome()).map(|o| o.status())),
                v.expectations_met
            ))?;
        }
    }
    Ok(report.exit_code() as u8)
}

#[derive(Serialize)]
struct SweepJson<'a> {
    n: usize,
    k: usize,
    ell: usize,
    d: usize,
    j: i64,
    x_size: usize,
    in_window: bool,
    #[serde(with = "json_biguint")]
    edge_count: &'a BigUint,
    #[serde(with = "json_biguint")]
    min_degree: &'a BigUint,
    #[serde(with = "rational::json")]
    ratio: &'a Rational,
    search_outcome: &'static str,
}

impl<'a> From<&'a SweepRow> for SweepJson<'a> {
    fn from(r: &'a SweepRow) -> Self {
        SweepJson {
            n: r.spec.n,
            k: r.spec.k,
            ell: r.spec.ell,
            d: r.d,
            j: r.spec.j,
            x_size: r.spec.x_size,
            in_window: r.in_window,
            edge_count: &r.edge_count,
            min_degree: &r.min_degree,
            ratio: &r.ratio,
            search_outcome: r.search_outcome,
        }
    }
}

pub fn sweep(g: &GlobalArgs, a: &SweepArgs) -> Result<u8> {
    let (n_lo, n_hi) =
        a.n.bounded()
            .ok_or_else(|| usage("--n needs a value or a range"))?;
    let config = g.search_config()?;
    let cap = a.search_cap.min(MAX_VERTICES);
    let mut rows: Vec<SweepRow> = Vec::new();
    for n in n_lo.max(2)..=n_hi {
        for k in a.k.within(2, n) {
            let (n, k) = (n as usize, k as usize);
            for ell in a.ell.for_k(k) {
                for j in a.j.within(ell as i64 + 1 - k as i64, k as i64) {
                    for x in a.x_size.within(0, n as i64) {
                        let spec = ExtremalSpec::new(n, k, ell, j, x as usize).map_err(usage)?;
                        // one search per spec, shared by its d rows
                        let mut outcome = None;
                        for d in a.d.within(1, k as i64 - 1) {
                            let cap = if outcome.is_some() { 0 } else { cap };
                            let mut row =
                                sweep_row(&spec, d as usize, cap, &config).map_err(usage)?;
                            match outcome {
                                Some(o) => row.search_outcome = o,
                                None => outcome = Some(row.search_outcome),
                            }
                            rows.push(row);
                        }
                    }
                }
            }
        }
    }
    match g.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut out = String::from(SWEEP_HEADER);
            out.push('\n');
            for r in &rows {
                out += &r.csv_line();
                out.push('\n');
            }
            g.emit(&out)?;
        }
        Format::Json => {
            let json: Vec<SweepJson> = rows.iter().map(SweepJson::from).collect();
            g.emit(&to_json(&json)?)?;
        }
    }
    let budget = rows.iter().any(|r| r.search_outcome == "budget");
    Ok(if budget { EXIT_BUDGET } else { 0 })
}
