//! Human-readable rendering. Every function formats an already computed
//! report, so text and `--json` output never diverge.

use std::fmt::Write;

use nilgeo_core::algebra::catalog::{generic_label, pair_label};
use nilgeo_core::classify::NaturallyReductive;
use nilgeo_core::exact::{format_rational, Rational};
use nilgeo_core::isospectral::{CriterionOutcome, IsospectralVerdict, Witness};

use crate::fuzz::FuzzSummary;
use crate::report::DiagnosticReport;
use crate::suite::SuiteRow;

#[derive(Debug, Clone, Copy)]
pub struct Style {
    pub color: bool,
}

impl Style {
    fn paint(&self, code: &str, text: &str) -> String {
        if self.color {
            format!("\x1b[{code}m{text}\x1b[0m")
        } else {
            text.to_string()
        }
    }

    pub fn good(&self, text: &str) -> String {
        self.paint("32", text)
    }

    pub fn bad(&self, text: &str) -> String {
        self.paint("31", text)
    }

    pub fn verdict(&self, ok: bool, text: &str) -> String {
        if ok {
            self.good(text)
        } else {
            self.bad(text)
        }
    }
}

fn label(dim_v: usize, dim_z: usize, idx: usize) -> String {
    if (dim_v, dim_z) == (6, 3) {
        pair_label(idx).to_string()
    } else {
        generic_label(dim_v, idx)
    }
}

fn vector(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(format_rational).collect();
    format!("({})", parts.join(", "))
}

fn central_combination(dim_v: usize, dim_z: usize, z: &[Rational]) -> String {
    let terms: Vec<String> = z
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != Rational::from_integer(0.into()))
        .map(|(k, c)| {
            let name = label(dim_v, dim_z, dim_v + k);
            match format_rational(c).as_str() {
                "1" => name,
                "-1" => format!("-{name}"),
                s => format!("{s}·{name}"),
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ").replace("+ -", "- ")
    }
}

pub fn naturally_reductive(out: &mut String, nr: &NaturallyReductive, dim_v: usize, dim_z: usize, style: Style) {
    match nr {
        NaturallyReductive::Structure(s) => {
            let _ = writeln!(out, "naturally reductive: {}", style.good("yes"));
            for p in 0..dim_z {
                for q in p + 1..dim_z {
                    let _ = writeln!(
                        out,
                        "  T̃({}, {}) = {}",
                        label(dim_v, dim_z, dim_v + p),
                        label(dim_v, dim_z, dim_v + q),
                        central_combination(dim_v, dim_z, &s.central_bracket[p][q])
                    );
                }
            }
            for c in &s.verification.checks {
                let _ = writeln!(
                    out,
                    "  {:<36} {} instances, {} failures",
                    c.identity.label(),
                    c.instances,
                    c.failures
                );
            }
            if s.non_unique {
                let _ = writeln!(out, "  note: j has a kernel, T̃ is one of several solutions");
            }
        }
        NaturallyReductive::Obstruction(o) => {
            let _ = writeln!(out, "naturally reductive: {}", style.bad("no"));
            let _ = write!(out, "  obstruction: {:?}", o.kind);
            if let Some((p, q)) = o.pair {
                let _ = write!(
                    out,
                    " at ({}, {})",
                    label(dim_v, dim_z, dim_v + p),
                    label(dim_v, dim_z, dim_v + q)
                );
            }
            let _ = writeln!(out);
            if let Some(c) = &o.failed_identity {
                let _ = writeln!(
                    out,
                    "  failed identity: {} ({} failures)",
                    c.identity.label(),
                    c.failures
                );
            }
        }
        NaturallyReductive::Inapplicable { reason } => {
            let _ = writeln!(out, "naturally reductive: not decided ({reason})");
        }
    }
}

pub fn report(r: &DiagnosticReport, style: Style) -> String {
    let mut out = String::new();
    let id = &r.identity;
    let (n, m) = (id.dim_v, id.dim_z);
    let _ = writeln!(
        out,
        "algebra: {} [{}], dim v = {n}, dim z = {m}",
        id.name.as_deref().unwrap_or("unnamed"),
        id.source
    );
    let show = |x: &Option<Rational>| x.as_ref().map_or("not scalar".to_string(), format_rational);
    let _ = writeln!(out, "J = C·Id: C = {}", show(&r.scalars.j_scalar));
    let _ = writeln!(out, "B = D·Id: D = {}", show(&r.scalars.b_scalar));
    let p = &r.properties;
    let _ = write!(out, "type A: {}", style.verdict(p.type_a, &p.type_a.to_string()));
    if let Some(w) = &p.type_a_witness {
        let _ = write!(out, " (J∘j_{} not skew at ({}, {}))", w.index + 1, w.row, w.col);
    }
    let _ = writeln!(out);
    let _ = writeln!(out, "heisenberg type: {}", p.heisenberg_type);
    let _ = writeln!(out, "modified heisenberg: {}", p.modified_heisenberg.is_some());
    let _ = write!(out, "parallel ricci: {}", r.parallel_ricci.parallel);
    if let Some(w) = &r.parallel_ricci.witness {
        let _ = write!(
            out,
            " ((∇_{} ric)({}, {}) = {})",
            label(n, m, w.x),
            label(n, m, w.y),
            label(n, m, w.z),
            format_rational(&w.value)
        );
    }
    let _ = writeln!(out);
    naturally_reductive(&mut out, &r.naturally_reductive, n, m, style);
    let o = &r.oracle;
    let ok = o.closed_form_mismatches.is_empty();
    let _ = writeln!(
        out,
        "closed forms vs definitions: {} checks, {}",
        o.closed_form_checks,
        style.verdict(ok, &format!("{} mismatches", o.closed_form_mismatches.len()))
    );
    if let Some(census) = &r.abelian_census {
        let counts: Vec<String> = census.iter().map(|c| format!("{}:{}", c.w_dim, c.count)).collect();
        let _ = writeln!(out, "coordinate abelian W ⊕ z by dim W: {}", counts.join(" "));
    }
    if let Some(v) = &r.isospectral {
        out.push_str(&verdict(v, style));
    }
    out
}

fn outcome(o: &CriterionOutcome, style: Style) -> String {
    match o {
        CriterionOutcome::Pass { evidence } => format!("{} ({evidence})", style.good("pass")),
        CriterionOutcome::Inconclusive { reason } => format!("inconclusive ({reason})"),
        CriterionOutcome::Fail { witness } => format!("{} ({})", style.bad("fail"), witness_text(witness)),
    }
}

fn witness_text(w: &Witness) -> String {
    match w {
        Witness::CentralVector {
            z,
            charpoly_first,
            charpoly_second,
        } => format!("at Z = {}: {charpoly_first} vs {charpoly_second}", vector(z)),
        Witness::BracketOutsideLattice { side, a, b, bracket } => format!(
            "algebra {}: [m{}, m{}] = {} is not in 2L",
            side + 1,
            a + 1,
            b + 1,
            vector(bracket)
        ),
        Witness::KernelSpectrum {
            z,
            bound,
            spectrum_first,
            spectrum_second,
        } => {
            let fmt = |s: &[nilgeo_core::isospectral::SpectrumEntry]| {
                s.iter()
                    .map(|e| format!("{}x{}", format_rational(&e.length_squared), e.count))
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            format!(
                "at Z = {}, squared lengths <= {}: [{}] vs [{}]",
                vector(z),
                format_rational(bound),
                fmt(spectrum_first),
                fmt(spectrum_second)
            )
        }
    }
}

pub fn verdict(v: &IsospectralVerdict, style: Style) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "criterion (i)   eigenvalues of j_Z: {}",
        outcome(&v.criterion_i, style)
    );
    let _ = writeln!(out, "criterion (ii)  [M, M] ⊆ 2L: {}", outcome(&v.criterion_ii, style));
    let _ = writeln!(
        out,
        "criterion (iii) kernel lattices: {}",
        outcome(&v.criterion_iii, style)
    );
    for s in &v.strata {
        let basis: Vec<String> = s.kernel_basis.iter().map(|b| format!("({})", b.join(", "))).collect();
        let _ = writeln!(
            out,
            "  stratum {}: {} kernel {{{}}}",
            s.condition,
            if s.verified { "equal" } else { "unverified" },
            basis.join(", ")
        );
    }
    if let Some(s) = &v.sample {
        let _ = writeln!(
            out,
            "  sampled {} vectors of L* with coefficients in [-{r}, {r}], squared length <= {}",
            s.count,
            format_rational(&s.bound),
            r = s.coefficient_radius
        );
    }
    let text = match v.overall {
        nilgeo_core::isospectral::Overall::IsospectralByCriterion => "isospectral by criterion",
        nilgeo_core::isospectral::Overall::NotEstablished => "not established",
    };
    let _ = writeln!(out, "overall: {}", style.verdict(v.established(), text));
    out
}

pub fn suite(rows: &[SuiteRow], style: Style) -> String {
    let mut out = String::new();
    let width = rows.iter().map(|r| r.id.len()).max().unwrap_or(0);
    for r in rows {
        let tag = style.verdict(r.pass, if r.pass { "PASS" } else { "FAIL" });
        let _ = writeln!(out, "{tag}  {:<width$}  {}", r.id, r.claim);
        if !r.pass {
            let _ = writeln!(out, "      {:<width$}  observed: {}", "", r.observed);
        }
    }
    let passed = rows.iter().filter(|r| r.pass).count();
    let _ = writeln!(out, "{passed}/{} rows pass", rows.len());
    out
}

pub fn fuzz(s: &FuzzSummary, style: Style) -> String {
    let mut out = String::new();
    let ok = s.discrepancies.is_empty();
    let _ = writeln!(
        out,
        "fuzz seed {} count {} (n = {}, m = {}): {} checks, {}",
        s.seed,
        s.count,
        s.n,
        s.m,
        s.checks,
        style.verdict(ok, &format!("{} discrepancies", s.discrepancies.len()))
    );
    for d in &s.discrepancies {
        let _ = writeln!(
            out,
            "  case {} (seed {}): {} at {:?}",
            d.case, d.case_seed, d.check, d.indices
        );
    }
    out
}
