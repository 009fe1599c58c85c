//! The reproduction suite: one check per acceptance criterion, each with its
//! own time limit.
//!
//! A check passes only if every assertion held within the limit. Running
//! out of budget gives `Partial`, never `Pass`. With `perturb` set, the
//! realized presentations are altered before the brute-force comparisons, so
//! criteria 1 and 2 must fail.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use factorlens_core::family::{FamilySpec, FamilyView, MonoidSource, PropertyReport, UnionSource};
use factorlens_core::krull::{
    counterexample_unions, partial_product_rho, CounterexampleSource, CounterexampleSpec,
    RealizedKrull, RealizedSource, UnionRoute,
};
use factorlens_core::monoid::{
    catenary_of, davenport_constant, zero_sum_presentation, AtomPresentation, Factorization,
};
use factorlens_core::power::{PowerExample, PowerSource};
use factorlens_core::relations::{exact_elasticity, omega, omega_of, tame_degree};
use factorlens_core::{ratio, Error, LengthSet, Multisets};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::is_resource;
use crate::report::{Cell, Report, Table};
use crate::target::{AnySource, DELTA_ATOMS};

pub const DEFAULT_SEED: u64 = 0x5eed;

const REALIZED: [&[u64]; 4] = [&[2, 3], &[2, 5], &[3, 4, 6], &[2, 3, 5]];

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub budget: u64,
    pub perturb: bool,
    /// Criteria to run; all when empty.
    pub only: Vec<u32>,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            budget: crate::DEFAULT_BUDGET,
            perturb: false,
            only: Vec::new(),
            seed: DEFAULT_SEED,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    Partial,
}

impl Outcome {
    pub fn label(self) -> &'static str {
        match self {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Partial => "PARTIAL",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Verdict {
    pub id: u32,
    pub name: &'static str,
    pub outcome: Outcome,
    pub detail: String,
    pub elapsed: Duration,
    pub limit: Duration,
}

impl Verdict {
    /// One human-readable line.
    pub fn line(&self) -> String {
        format!(
            "criterion {} {}: {} ({:.2} s, limit {} s) {}",
            self.id,
            self.name,
            self.outcome.label(),
            self.elapsed.as_secs_f64(),
            self.limit.as_secs(),
            self.detail
        )
    }
}

/// What a check found: every failed assertion, plus a summary.
#[derive(Debug, Default)]
struct Findings {
    failures: Vec<String>,
    summary: Vec<String>,
}

impl Findings {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    /// The first few failures and a count of the rest.
    fn failure_summary(&self) -> String {
        const SHOWN: usize = 5;
        let mut s = self.failures[..self.failures.len().min(SHOWN)].join("; ");
        if self.failures.len() > SHOWN {
            s.push_str(&format!("; and {} more", self.failures.len() - SHOWN));
        }
        s
    }

    fn note(&mut self, s: String) {
        self.summary.push(s);
    }

    /// Fails the check if `start` is more than `limit` ago.
    fn within(&mut self, what: &str, start: Instant, limit: Duration) {
        let t = start.elapsed();
        self.check(t <= limit, || {
            format!(
                "{what} took {:.2} s, over {} s",
                t.as_secs_f64(),
                limit.as_secs()
            )
        });
    }
}

type Check = fn(&SuiteConfig) -> Result<Findings, Error>;

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    check: Check,
}

fn criteria() -> Vec<Criterion> {
    let c = |id, name, secs, check| Criterion {
        id,
        name,
        limit: Duration::from_secs(secs),
        check,
    };
    vec![
        c(1, "realization", 40, realization as Check),
        c(2, "closed-form lengths", 60, closed_form_lengths),
        c(3, "power monoid example", 60, power_example),
        c(4, "coproduct counterexample", 300, counterexample),
        c(5, "exact elasticity", 30, exact_elasticities),
        c(6, "family properties", 60, family_properties),
        c(7, "local invariant inequalities", 60, local_inequalities),
        c(8, "union density trend", 60, density_trend),
    ]
}

/// Runs the selected criteria in parallel; verdicts come back in id order.
pub fn run(config: &SuiteConfig) -> Vec<Verdict> {
    let selected: Vec<Criterion> = criteria()
        .into_iter()
        .filter(|c| config.only.is_empty() || config.only.contains(&c.id))
        .collect();
    selected
        .par_iter()
        .map(|c| {
            let start = Instant::now();
            let result = (c.check)(config);
            let elapsed = start.elapsed();
            let (outcome, detail) = match result {
                Ok(mut f) => {
                    f.within("the criterion", start, c.limit);
                    if f.failures.is_empty() {
                        (Outcome::Pass, f.summary.join("; "))
                    } else {
                        (Outcome::Fail, f.failure_summary())
                    }
                }
                Err(e) if is_resource(&e) => (Outcome::Partial, e.to_string()),
                Err(e) => (Outcome::Fail, e.to_string()),
            };
            Verdict {
                id: c.id,
                name: c.name,
                outcome,
                detail,
                elapsed,
                limit: c.limit,
            }
        })
        .collect()
}

/// The verdicts as a report. Timings vary between runs, so they are only
/// included on request.
pub fn report(verdicts: &[Verdict], timings: bool) -> Report {
    let mut header = vec!["criterion", "name", "outcome", "limit_seconds"];
    if timings {
        header.push("seconds");
    }
    header.push("detail");
    let rows = verdicts
        .iter()
        .map(|v| {
            let mut row = vec![
                Cell::Int(v.id as u64),
                Cell::Text(v.name.into()),
                Cell::Text(v.outcome.label().into()),
                Cell::Int(v.limit.as_secs()),
            ];
            if timings {
                row.push(Cell::Text(format!("{:.3}", v.elapsed.as_secs_f64())));
            }
            row.push(Cell::Text(v.detail.clone()));
            row
        })
        .collect();
    let mut r = Report::new("paper-suite");
    let count = |o| verdicts.iter().filter(|v| v.outcome == o).count();
    r.set(
        "summary",
        serde_json::json!({
            "pass": count(Outcome::Pass),
            "fail": count(Outcome::Fail),
            "partial": count(Outcome::Partial),
        }),
    );
    r.table = Some(Table { header, rows });
    r
}

fn realize(l: &[u64]) -> Result<RealizedKrull, Error> {
    RealizedKrull::realize(&LengthSet::from(l.to_vec()))
}

/// The presentation used for brute force; altered under `perturb`.
fn brute_presentation(r: &RealizedKrull, config: &SuiteConfig) -> Result<AtomPresentation, Error> {
    let p = r.presentation();
    if !config.perturb {
        return Ok(p.clone());
    }
    let mut atoms = p.atoms().to_vec();
    atoms.last_mut().expect("at least one atom")[0] += 1;
    AtomPresentation::new(p.dim(), atoms, None)
}

fn realization(config: &SuiteConfig) -> Result<Findings, Error> {
    let b = config.budget;
    let mut f = Findings::default();
    for l in REALIZED {
        let start = Instant::now();
        let (min_l, max_l) = (l[0], l[l.len() - 1]);
        let max_delta = l.windows(2).map(|w| w[1] - w[0]).max().unwrap_or(0);
        let r = realize(l)?;
        let rep = r.verify_realization(DELTA_ATOMS, 3, b)?;
        f.check(rep.union_at_min.as_slice() == l, || {
            format!("{l:?}: closed form gives U_min L = {}", rep.union_at_min)
        });
        f.check(rep.max_delta_seen == max_delta, || {
            format!("{l:?}: closed form max distance {}", rep.max_delta_seen)
        });
        for row in &rep.rho_rows {
            let (ell, nu) = (row.k / min_l, row.k % min_l);
            f.check(row.got == ell * max_l + nu, || {
                format!("{l:?}: closed form rho_{} = {}", row.k, row.got)
            });
        }
        // The same statements on the atoms themselves, by brute force.
        let p = brute_presentation(&r, config)?;
        let u = p.unions(min_l, b)?.union;
        f.check(u.as_slice() == l, || {
            format!("{l:?}: enumeration gives U_min L = {u}")
        });
        let seen = p.observed_distances(DELTA_ATOMS, b)?.max().unwrap_or(0);
        f.check(seen == max_delta, || {
            format!("{l:?}: enumeration gives max distance {seen}")
        });
        for nu in 0..min_l {
            let rho = p.unions(min_l + nu, b)?.rho;
            f.check(rho == max_l + nu, || {
                format!("{l:?}: enumeration gives rho_{} = {rho}", min_l + nu)
            });
        }
        f.within(&format!("{l:?}"), start, Duration::from_secs(10));
    }
    f.note(format!("{} length sets realized", REALIZED.len()));
    Ok(f)
}

fn closed_form_lengths(config: &SuiteConfig) -> Result<Findings, Error> {
    let mut f = Findings::default();
    let mut elements = 0u64;
    for l in REALIZED {
        let r = realize(l)?;
        let p = brute_presentation(&r, config)?;
        for n in 1..=4 {
            let count = factorlens_core::multiset_count(p.atom_count() as u64, n);
            if count > config.budget as u128 {
                return Err(Error::Budget {
                    what: "multisets of atoms",
                    estimate: count,
                    budget: config.budget,
                });
            }
            for ms in Multisets::new(p.atom_count(), n as usize) {
                let x = p.sum_of(&ms);
                let brute = p.length_set(&x);
                match r.closed_length_set(&x) {
                    Ok(closed) => f.check(closed == brute, || {
                        format!("{l:?} {ms:?}: closed {closed}, brute force {brute}")
                    }),
                    Err(e) => f.check(false, || format!("{l:?} {ms:?}: {e}")),
                }
                elements += 1;
            }
        }
    }
    f.note(format!("{elements} atom multisets compared"));
    Ok(f)
}

fn power_example(config: &SuiteConfig) -> Result<Findings, Error> {
    let b = config.budget;
    let mut f = Findings::default();
    for n in [2u64, 3] {
        let ex = PowerExample::new(n)?;
        let src = PowerSource::new(ex, b)?;
        let mut prev: Option<u64> = None;
        for k in 2 * n..=2 * n + 3 {
            let rho = src.union(k)?.sup();
            f.check(rho == 2 * n * (k - 1) + 1, || {
                format!("n={n}: rho_{k} = {rho}")
            });
            if let Some(p) = prev {
                f.check(rho - p == 2 * n, || {
                    format!("n={n}: rho_{k} - rho_{} = {}", k - 1, rho - p)
                });
            }
            prev = Some(rho);
        }

        let small = ex.submonoid(4 * n + 2, b)?;
        let w = (0..small.atoms().len())
            .map(|u| small.omega_atom(u, 2 * n + 3))
            .max()
            .unwrap_or(0);
        f.check(w == 2 * n + 1, || format!("n={n}: omega = {w}"));

        let store = ex.submonoid(40, b)?;
        let atoms: BTreeSet<_> = store.atoms().iter().cloned().collect();
        f.check(
            atoms == [PowerExample::unit_interval(), ex.a()].into(),
            || format!("n={n}: atoms {atoms:?}"),
        );
        let target = ratio(2 * n, 1);
        let hit = store
            .store()
            .filter(|x| !x.is_zero())
            .find(|x| store.length_set(x).elasticity() == target);
        f.check(hit.is_none(), || {
            format!("n={n}: {} has elasticity {target}", hit.unwrap())
        });
        f.note(format!(
            "n={n}: omega {w}, {} stored elements",
            store.store_len()
        ));
    }
    Ok(f)
}

fn counterexample(config: &SuiteConfig) -> Result<Findings, Error> {
    let b = config.budget;
    let mut f = Findings::default();
    let spec = CounterexampleSpec::admissible_instance(2, 4)?;
    f.check(spec.m == [0, 1, 5, 19, 57], || {
        format!("instance m = {:?}", spec.m)
    });
    let mut bounds = Vec::new();
    for k in 1..=4u64 {
        let closed = counterexample_unions(&spec, k, UnionRoute::ClosedForm)?;
        let expected =
            LengthSet::interval(k, spec.m[k as usize - 1] + 1).union(&spec.u[k as usize - 1]);
        f.check(closed.at_least(k) == expected, || {
            format!("U_{k} above k is {}", closed.at_least(k))
        });
        if k <= 3 {
            let truncated =
                counterexample_unions(&spec, k, UnionRoute::TruncatedProduct { budget: b })?;
            f.check(truncated == closed, || {
                format!("U_{k}: truncated product {truncated}, closed form {closed}")
            });
        }
        if k >= 2 {
            let lo = spec.u[k as usize - 1].min().expect("U_k is non-empty");
            f.check(
                closed.contains(lo) && !closed.contains(lo + 1) && closed.contains(lo + 2),
                || format!("U_{k} has no hole at {}", lo + 1),
            );
            bounds.push(closed.minimal_aap_bound(1).map(|w| w.bound));
            let rho = partial_product_rho(&spec, k, b)?;
            f.check(rho == 1 + spec.m[k as usize - 1], || {
                format!("rho_{k} of the first {} factors is {rho}", k - 1)
            });
        }
    }
    f.check(
        bounds.iter().all(Option::is_some) && bounds.windows(2).all(|w| w[0] < w[1]),
        || format!("AAP bounds {bounds:?} do not increase"),
    );
    f.note(format!("AAP bounds {bounds:?}"));
    Ok(f)
}

fn exact_elasticities(config: &SuiteConfig) -> Result<Findings, Error> {
    let mut f = Findings::default();
    let cases = [
        ("<2,3>", AtomPresentation::numerical(&[2, 3])?),
        ("B(Z3)", zero_sum_presentation(&[3], None)?),
        ("realize {2,3}", realize(&[2, 3])?.presentation().clone()),
    ];
    let want = ratio(3, 2);
    for (name, p) in cases {
        let start = Instant::now();
        let cert = exact_elasticity(&p, config.budget)?;
        let w = &cert.witness;
        let x = p.evaluate(&Factorization(w.x.clone()));
        let y = p.evaluate(&Factorization(w.y.clone()));
        f.check(cert.rho == want, || format!("{name}: rho = {}", cert.rho));
        f.check(x == y && ratio(w.x_len(), w.y_len()) == cert.rho, || {
            format!(
                "{name}: witness {:?} ~ {:?} does not certify {}",
                w.x, w.y, cert.rho
            )
        });
        f.within(name, start, Duration::from_secs(10));
    }
    let z3 = zero_sum_presentation(&[3], None)?;
    let d = davenport_constant(&z3);
    f.check(ratio(d, 2) == want, || format!("D(Z3)/2 = {d}/2"));
    f.note("rho = 3/2 with certified witnesses".into());
    Ok(f)
}

/// Generator families with values in `1..=12`, at most four generators, the
/// first containing 1.
pub fn random_families(seed: u64, count: usize, depth: u64) -> Vec<FamilySpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.random_range(1..=4);
            let gens: Vec<LengthSet> = (0..n)
                .map(|i| {
                    let size = rng.random_range(1..=3);
                    let mut g: LengthSet = (0..size).map(|_| rng.random_range(1..=12)).collect();
                    if i == 0 {
                        g = g.union(&LengthSet::singleton(1));
                    }
                    g
                })
                .collect();
            FamilySpec::new(gens, depth).expect("first generator contains 1")
        })
        .collect()
}

fn family_properties(config: &SuiteConfig) -> Result<Findings, Error> {
    let b = config.budget;
    let k = 10;
    let mut sources: Vec<(String, AnySource, u64)> = random_families(config.seed, 25, k)
        .into_iter()
        .enumerate()
        .map(|(i, f)| (format!("random family {i}"), AnySource::new(f), k))
        .collect();
    let monoids = [
        ("<2,3>", AtomPresentation::numerical(&[2, 3])?),
        ("B(Z3)", zero_sum_presentation(&[3], None)?),
        ("B(Z2+Z2)", zero_sum_presentation(&[2, 2], None)?),
    ];
    for (name, p) in monoids {
        sources.push((
            name.into(),
            AnySource::new(MonoidSource::new(p, b, DELTA_ATOMS)),
            k,
        ));
    }
    for l in REALIZED {
        let realized = realize(l)?;
        let src = RealizedSource {
            realized,
            budget: b,
        };
        sources.push((format!("realize {l:?}"), AnySource::new(src), k));
    }
    for n in [2, 3] {
        let src = PowerSource::new(PowerExample::new(n)?, b)?;
        sources.push((format!("power n={n}"), AnySource::new(src), k));
    }
    let spec = CounterexampleSpec::admissible_instance(2, 4)?;
    let route = UnionRoute::ClosedForm;
    sources.push((
        "counterexample".into(),
        AnySource::new(CounterexampleSource { spec, route }),
        4,
    ));

    let reports: Vec<(String, PropertyReport)> = sources
        .into_par_iter()
        .map(|(name, src, k)| Ok((name, FamilyView::new(src).check_properties(k)?)))
        .collect::<Result<_, Error>>()?;
    let mut f = Findings::default();
    let mut checked = 0;
    for (name, r) in &reports {
        checked += r.checked;
        for (prop, detail) in &r.violations {
            f.check(false, || format!("{name}: {prop} ({detail})"));
        }
    }
    f.note(format!("{} families, {checked} assertions", reports.len()));
    Ok(f)
}

fn local_inequalities(config: &SuiteConfig) -> Result<Findings, Error> {
    let b = config.budget;
    let mut f = Findings::default();
    let cases = [
        ("<2,3>", AtomPresentation::numerical(&[2, 3])?, false),
        ("B(Z3)", zero_sum_presentation(&[3], None)?, true),
        ("B(Z2+Z2)", zero_sum_presentation(&[2, 2], None)?, true),
        (
            "realize {2,3}",
            realize(&[2, 3])?.presentation().clone(),
            false,
        ),
    ];
    let mut elements = 0;
    for (name, p, zero_sum) in cases {
        let mut c_max = 0;
        for n in 1..=3 {
            for a in p.elements_of_length(n, b)? {
                let lengths = p.length_set(&a);
                let w = omega_of(&p, &a, b)?;
                f.check(lengths.sup() <= w, || {
                    format!("{name} {a:?}: max L = {} > omega = {w}", lengths.sup())
                });
                let zs = p.factorizations(&a);
                if zs.len() >= 2 {
                    let c = catenary_of(&zs);
                    let gap = lengths.delta_set().max().unwrap_or(0);
                    f.check(gap < c, || format!("{name} {a:?}: 1 + {gap} > c = {c}"));
                    c_max = c_max.max(c);
                }
                elements += 1;
            }
        }
        let (mut t_max, mut w_max, mut closed) = (0, 0, true);
        for u in 0..p.atom_count() {
            let w = omega(&p, u, b)?;
            let t = tame_degree(&p, u, b)?;
            let rho = p.unions(w, b)?.rho;
            f.check(t.value <= rho, || {
                format!("{name} atom {u}: t = {} > rho_{w} = {rho}", t.value)
            });
            t_max = t_max.max(t.value);
            w_max = w_max.max(w);
            closed &= t.closed;
        }
        if closed {
            f.check(c_max <= t_max && t_max <= w_max * w_max, || {
                format!("{name}: c >= {c_max}, t = {t_max}, omega = {w_max}")
            });
        }
        if zero_sum {
            for k in 1..=4 {
                let u = p.unions(k, b)?.union;
                f.check(u.is_ap(1), || {
                    format!("{name}: U_{k} = {u} is not an interval")
                });
            }
        }
    }
    f.note(format!("{elements} elements checked"));
    Ok(f)
}

fn density_trend(config: &SuiteConfig) -> Result<Findings, Error> {
    let mut f = Findings::default();
    let mut view = FamilyView::new(PowerSource::new(PowerExample::new(2)?, config.budget)?);
    view.extend_to(20)?;
    let delta = view.family_delta()?.set.min().unwrap_or(1);
    let rho = view.elasticity().expect("the example knows its elasticity");
    let limit = (&rho - ratio(1, 1) / &rho) / ratio(delta, 1);
    f.check(limit == ratio(5, 4), || format!("limit {limit}"));
    let density = |k: u64| ratio(view.union(k).len() as u64 - 1, k);
    for k in 1..=20 {
        f.check(density(k) <= limit, || {
            format!("density at {k} is {}", density(k))
        });
    }
    let mut k = 1;
    while 2 * k <= 20 {
        f.check(density(k) <= density(2 * k), || {
            format!("density drops from {k} to {}", 2 * k)
        });
        k *= 2;
    }
    let last = density(20);
    f.check(
        last.clone() * ratio(100, 1) >= limit.clone() * ratio(85, 1),
        || format!("density at 20 is {last}, not within 15% of {limit}"),
    );
    f.note(format!("density at 20 is {last}, limit {limit}"));
    Ok(f)
}
