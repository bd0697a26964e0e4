//! Plain-text summaries of the JSON reports.

use std::fmt::Write;

use planepart::analysis::{DescentLevel, EstimateReport, LowerBoundResult, SearchResult};
use planepart::construct::ConstructionResult;
use planepart::metric::Verdict;
use planepart::plane::{validate_axioms, IncidencePlane};

pub fn plane(p: &IncidencePlane) -> String {
    let report = validate_axioms(p);
    format!(
        "PG(2, {}): {} points, {} lines, {} points per line; axioms {}\n",
        p.q(),
        p.n(),
        p.n(),
        p.q() + 1,
        if report.passed() { "hold" } else { "FAIL" }
    )
}

pub fn construction(res: &ConstructionResult) -> String {
    let m = &res.metadata;
    let mut s = format!(
        "q = {}, k = {}, l = {}, seed = {}, attempt {}: {} classes\n",
        m.q,
        m.k,
        m.l,
        m.seed,
        m.retries,
        res.partition.class_count()
    );
    for (name, class) in res.partition.names().iter().zip(res.partition.classes()) {
        let _ = writeln!(s, "  {name:>6}  {:>6} points  {:>6} lines", class.point_count(), class.line_count());
    }
    s
}

pub fn verdict(v: &Verdict, classes: usize) -> String {
    match v {
        Verdict::Resolving => format!("resolving ({classes} classes)\n"),
        Verdict::NotResolving(groups) => {
            let mut s = format!("not resolving: {} pairs in {} groups\n", v.pair_count(), groups.len());
            for g in groups.iter().take(20) {
                let members: Vec<String> = g.members.iter().map(|m| m.to_string()).collect();
                let rep: Vec<String> = g.representation.iter().map(|d| d.to_string()).collect();
                let _ = writeln!(s, "  ({}) {}", rep.join(","), members.join(" "));
            }
            if groups.len() > 20 {
                let _ = writeln!(s, "  ... {} more groups", groups.len() - 20);
            }
            s
        }
    }
}

pub fn bounds(b: &LowerBoundResult) -> String {
    format!(
        "q = {}: at least {} classes (r = {}, s = {}, t = {}); mixed-only t = {}\nnote: {}\n",
        b.q, b.total, b.r, b.s, b.t, b.pure_mixed_t, b.caveat
    )
}

pub fn search(r: &SearchResult) -> String {
    let mut s = match (r.exact, r.upper) {
        (Some(t), _) => format!("q = {}: pd = {t}\n", r.q),
        (None, Some(u)) => format!("q = {}: {} <= pd <= {u}\n", r.q, r.lower),
        (None, None) => format!("q = {}: pd >= {}\n", r.q, r.lower),
    };
    for l in &r.levels {
        let _ = writeln!(s, "  t = {:>2}: {:>10} verified{}", l.t, l.verified, if l.found { ", witness" } else { "" });
    }
    if r.budget_exhausted {
        s.push_str("  budget exhausted\n");
    }
    s
}

pub fn descent(q: u32, smallest: Option<usize>, levels: &[DescentLevel]) -> String {
    let mut s = match smallest {
        Some(t) => format!("q = {q}: witness with {t} classes\n"),
        None => format!("q = {q}: no witness found\n"),
    };
    for l in levels {
        let _ = writeln!(s, "  t = {:>3}: {} after {} attempts", l.t, if l.found { "found" } else { "none" }, l.attempts_used);
    }
    s
}

pub fn estimate(r: &EstimateReport) -> String {
    let se = r.std_error.map_or("n/a".to_string(), |e| format!("{e:.4}"));
    format!(
        "q = {}, k = {}, {} trials: mean {:.4} (se {se}), m(k) = {:.4}\n",
        r.q, r.k, r.trials, r.mean, r.m_k
    )
}
