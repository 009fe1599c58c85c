//! The subcommands. Every number in a report comes from a core operation.

use factorlens_core::family::{Distances, FamilyView, UnionSource};
use factorlens_core::krull::{
    counterexample_unions, CounterexampleSpec, RealizedKrull, UnionRoute,
};
use factorlens_core::monoid::{catenary_of, AtomPresentation};
use factorlens_core::power::{PowerExample, PowerSubmonoid};
use factorlens_core::relations::{delta_bound, exact_elasticity, omega, tame_degree};
use factorlens_core::{ratio, LengthSet};
use serde_json::{json, Value};

use crate::report::{extend_view, min_delta, rational, set, union_table, Report};
use crate::target::{AnySource, Target};
use crate::AppError;

/// Elements sampled for catenary degrees are sums of at most this many atoms.
const CATENARY_ATOMS: u64 = 3;

#[derive(Debug, Clone, Copy)]
pub struct Context {
    pub budget: u64,
    pub k_max: Option<u64>,
}

impl Context {
    fn k_max(&self, default: u64) -> u64 {
        self.k_max.unwrap_or(default)
    }
}

fn distances_json(d: &Distances) -> Value {
    json!({ "set": set(&d.set), "certification": d.certification })
}

fn view_of(target: &Target, ctx: &Context) -> Result<FamilyView<AnySource>, AppError> {
    Ok(FamilyView::new(target.source(ctx.budget)?))
}

/// Unions up to the horizon, as the report's table.
fn union_section(
    view: &mut FamilyView<AnySource>,
    k_max: u64,
    report: &mut Report,
) -> Result<(), AppError> {
    extend_view(view, k_max, report)?;
    let delta = min_delta(view, report)?;
    report.table = Some(union_table(view, delta, true));
    Ok(())
}

pub fn unions(target: &Target, ctx: &Context) -> Result<Report, AppError> {
    let mut report = Report::new("unions");
    report.set("kind", target.kind());
    let mut view = view_of(target, ctx)?;
    union_section(&mut view, ctx.k_max(target.default_k_max()), &mut report)?;
    Ok(report)
}

pub fn structure_check(target: &Target, ctx: &Context) -> Result<Report, AppError> {
    let mut report = Report::new("structure-check");
    report.set("kind", target.kind());
    let mut view = view_of(target, ctx)?;
    let horizon = extend_view(&mut view, ctx.k_max(target.default_k_max()), &mut report)?;
    report.set("horizon", horizon);
    if horizon == 0 {
        return Ok(report);
    }
    if let Some(v) = report.soft("structure check", view.structure_check(horizon))? {
        let windows: Vec<Value> = v
            .windows
            .iter()
            .map(|w| json!({ "k": w.k, "lo": w.lo, "hi": w.hi, "bound": w.bound }))
            .collect();
        report.set(
            "verdict",
            json!({
                "trivial": v.trivial,
                "delta": v.delta,
                "max_delta": v.max_delta,
                "q": v.q,
                "report_only": v.report_only,
                "l": v.l,
                "last_change": v.last_change,
                "stabilized": v.stabilized,
                "certification": v.certification,
                "windows": windows,
            }),
        );
    }
    if let Some(p) = report.soft("properties", view.check_properties(horizon))? {
        let violations: Vec<Value> = p
            .violations
            .iter()
            .map(|(name, detail)| json!({ "property": name, "detail": detail }))
            .collect();
        report.set(
            "properties",
            json!({ "checked": p.checked, "passed": p.passed(), "violations": violations }),
        );
    }
    let delta = min_delta(&view, &mut report)?;
    report.table = Some(union_table(&view, delta, false));
    Ok(report)
}

pub fn invariants(target: &Target, ctx: &Context) -> Result<Report, AppError> {
    let mut report = Report::new("invariants");
    report.set("kind", target.kind());
    let mut view = view_of(target, ctx)?;
    let k_max = ctx.k_max(target.default_k_max());
    match target {
        Target::Presentation { presentation, .. } => {
            presentation_invariants(presentation, ctx, &mut report)?;
            if let Some(d) = report.soft("distances", view.family_delta())? {
                report.set("delta", distances_json(&d));
            }
        }
        Target::Realized(r) => {
            report.set("m", json!(r.m()));
            report.set("closed_form_elasticity", rational(&r.elasticity()));
            report.set("delta", distances_json(&r.distances()));
            presentation_invariants(r.presentation(), ctx, &mut report)?;
        }
        Target::PowerExample { example, bound } => {
            let store = example.submonoid(*bound, ctx.budget)?;
            power_invariants(&store, 2 * example.n + 3, true, &mut report);
            report.set("elasticity", rational(&example.example_elasticity()));
            let accepted =
                report.soft("accepted elasticity", view.accepted_elasticity_check(k_max))?;
            if let Some(a) = accepted {
                report.set("accepted_at_k", a);
            }
            if let Some(d) = report.soft("distances", view.family_delta())? {
                report.set("delta", distances_json(&d));
            }
        }
        Target::Power(m) => {
            power_invariants(m, k_max, false, &mut report);
            if let Some(d) = report.soft("distances", view.family_delta())? {
                report.set("delta", distances_json(&d));
            }
        }
        Target::Counterexample(spec) => {
            report.set(
                "instance",
                serde_json::to_value(spec).expect("serializable"),
            );
            if let Some(d) = report.soft("distances", view.family_delta())? {
                report.set("delta", distances_json(&d));
            }
        }
        Target::Family(_) => {
            if let Some(d) = report.soft("distances", view.family_delta())? {
                report.set("delta", distances_json(&d));
            }
            if let Some(rho) = view.elasticity() {
                report.set("elasticity", rational(&rho));
            }
            if let Some(g) = report.soft("gcd law", view.gcd_min_delta_check())? {
                report.set("gcd_equals_min_delta", json!(g));
            }
        }
    }
    union_section(&mut view, k_max, &mut report)?;
    if !report.fields.contains_key("elasticity") && view.horizon() > 0 {
        if let Some(f) = report.soft("elasticity", view.fekete_elasticity(view.horizon()))? {
            report.set("elasticity_lower_bound", rational(&f.lower));
        }
    }
    Ok(report)
}

fn presentation_invariants(
    p: &AtomPresentation,
    ctx: &Context,
    report: &mut Report,
) -> Result<(), AppError> {
    let b = ctx.budget;
    report.set("dim", p.dim());
    report.set("atoms", json!(p.atoms()));
    report.set("grading", json!(p.grading()));
    match p.verify_atoms() {
        Ok(()) => report.set("atoms_verified", true),
        Err((i, z)) => {
            report.set("atoms_verified", false);
            report.set("atom_witness", json!({ "index": i, "factorization": z.0 }));
        }
    }
    if let Some(d) = report.soft("delta bound", delta_bound(p, b))? {
        report.set("delta_bound", d.bound);
    }
    if let Some(cert) = report.soft("elasticity", exact_elasticity(p, b))? {
        report.set("elasticity", rational(&cert.rho));
        report.set(
            "elasticity_witness",
            json!({ "x": cert.witness.x, "y": cert.witness.y }),
        );
    }

    let mut omegas = Vec::new();
    let mut tames = Vec::new();
    for u in 0..p.atom_count() {
        if let Some(w) = report.soft(&format!("omega of atom {u}"), omega(p, u, b))? {
            omegas.push(w);
        }
        if let Some(t) = report.soft(&format!("tame degree of atom {u}"), tame_degree(p, u, b))? {
            tames.push(json!({ "value": t.value, "closed": t.closed }));
        }
    }
    if omegas.len() == p.atom_count() {
        report.set(
            "omega",
            json!({ "atoms": omegas, "value": omegas.iter().max() }),
        );
    }
    if tames.len() == p.atom_count() {
        let max = tames.iter().filter_map(|t| t["value"].as_u64()).max();
        report.set("tame", json!({ "atoms": tames, "value": max }));
    }

    let mut sampled = 0u64;
    let mut c_max = 0u64;
    for k in 2..=CATENARY_ATOMS {
        let Some(elements) = report.soft("catenary sample", p.elements_of_length(k, b))? else {
            break;
        };
        for x in elements {
            c_max = c_max.max(catenary_of(&p.factorizations(&x)));
            sampled += 1;
        }
    }
    report.set(
        "catenary",
        json!({ "max_atoms": CATENARY_ATOMS, "sampled": sampled, "max": c_max }),
    );
    Ok(())
}

fn power_invariants(m: &PowerSubmonoid, max_len: u64, closed: bool, report: &mut Report) {
    let atoms: Vec<Value> = m
        .atoms()
        .iter()
        .map(|a| json!(a.as_set().as_slice()))
        .collect();
    report.set("atoms", Value::Array(atoms));
    let omegas: Vec<u64> = (0..m.atoms().len())
        .map(|u| m.omega_atom(u, max_len))
        .collect();
    report.set(
        "omega",
        json!({
            "atoms": omegas,
            "value": omegas.iter().max(),
            "search_length": max_len,
            "closed": closed,
        }),
    );
    let max_rho = m
        .store()
        .filter(|x| !x.is_zero())
        .map(|x| m.length_set(x).elasticity())
        .max();
    report.set(
        "store",
        json!({
            "bound": m.bound(),
            "elements": m.store_len(),
            "max_rho": max_rho.as_ref().map(rational),
        }),
    );
}

pub fn realize(l: &LengthSet, ctx: &Context) -> Result<Report, AppError> {
    let r = RealizedKrull::realize(l).map_err(|e| AppError::Input(e.to_string()))?;
    let mut report = Report::new("realize");
    report.set("lengths", set(l));
    report.set("m", json!(r.m()));
    report.set("dim", r.dim());
    report.set("atoms", json!(r.presentation().atoms()));
    report.set("elasticity", rational(&r.elasticity()));
    report.set("delta", distances_json(&r.distances()));
    if let Some(rep) = report.soft("realization", r.verify_realization(5, 3, ctx.budget))? {
        let rows: Vec<Value> = rep
            .rho_rows
            .iter()
            .map(|row| json!({ "k": row.k, "expected": row.expected, "got": row.got }))
            .collect();
        report.set(
            "realization",
            json!({
                "union_at_min": set(&rep.union_at_min),
                "max_delta_expected": rep.max_delta_expected,
                "max_delta_seen": rep.max_delta_seen,
                "rho_rows": rows,
                "passed": rep.passed(),
            }),
        );
    }
    let target = Target::Realized(r);
    let mut view = view_of(&target, ctx)?;
    union_section(&mut view, ctx.k_max(6), &mut report)?;
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Route {
    Closed,
    Truncated,
}

pub fn counterexample(d: u64, route: Route, ctx: &Context) -> Result<Report, AppError> {
    let k_max = ctx.k_max(4);
    let spec = CounterexampleSpec::admissible_instance(d, k_max)
        .map_err(|e| AppError::Input(e.to_string()))?;
    let mut report = Report::new("counterexample");
    report.set(
        "instance",
        serde_json::to_value(&spec).expect("serializable"),
    );
    let route = match route {
        Route::Closed => UnionRoute::ClosedForm,
        Route::Truncated => UnionRoute::TruncatedProduct { budget: ctx.budget },
    };
    report.set(
        "route",
        match route {
            UnionRoute::ClosedForm => "closed",
            UnionRoute::TruncatedProduct { .. } => "truncated",
        },
    );
    counterexample_section(&spec, route, k_max, &mut report)?;
    Ok(report)
}

fn counterexample_section(
    spec: &CounterexampleSpec,
    route: UnionRoute,
    k_max: u64,
    report: &mut Report,
) -> Result<(), AppError> {
    let mut view = FamilyView::new(AnySource::new(CounterexampleRouted {
        spec: spec.clone(),
        route,
    }));
    extend_view(&mut view, k_max, report)?;
    let mut signature = Vec::new();
    for k in 2..=view.horizon() {
        let u = view.union(k);
        let lo = spec.u[k as usize - 1].min().expect("U_k is non-empty");
        signature.push(json!({
            "k": k,
            "min_u": lo,
            "hole": u.contains(lo) && !u.contains(lo + 1) && u.contains(lo + 2),
            "aap_bound": u.minimal_aap_bound(1).map(|w| w.bound),
        }));
    }
    report.set("signature", Value::Array(signature));
    report.table = Some(union_table(&view, Some(1), true));
    Ok(())
}

/// The counterexample as a family computed along a chosen route.
struct CounterexampleRouted {
    spec: CounterexampleSpec,
    route: UnionRoute,
}

impl UnionSource for CounterexampleRouted {
    fn union(&self, k: u64) -> factorlens_core::Result<LengthSet> {
        counterexample_unions(&self.spec, k, self.route)
    }

    fn distances(&self) -> factorlens_core::Result<Distances> {
        factorlens_core::krull::CounterexampleSource {
            spec: self.spec.clone(),
            route: self.route,
        }
        .distances()
    }
}

pub fn power_example(n: u64, store_bound: u64, ctx: &Context) -> Result<Report, AppError> {
    let example = PowerExample::new(n).map_err(|e| AppError::Input(e.to_string()))?;
    let target = Target::PowerExample {
        example,
        bound: store_bound,
    };
    let mut report = invariants(&target, ctx)?;
    report.command = "power-example";
    report.set("n", n);
    let k_max = ctx.k_max(target.default_k_max());
    let mut view = view_of(&target, ctx)?;
    extend_view(&mut view, k_max, &mut report)?;
    let densities: Vec<Value> = (1..=view.horizon())
        .map(|k| json!({ "k": k, "value": rational(&ratio(view.union(k).len() as u64 - 1, k)) }))
        .collect();
    report.set("densities", Value::Array(densities));
    Ok(report)
}
