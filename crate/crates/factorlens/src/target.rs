//! Turns a parsed spec into the objects the core crate computes on.

use factorlens_core::family::{Certification, Distances, FamilySpec, MonoidSource, UnionSource};
use factorlens_core::krull::{
    CounterexampleSource, CounterexampleSpec, RealizedKrull, RealizedSource, UnionRoute,
};
use factorlens_core::monoid::{zero_sum_presentation, AtomPresentation};
use factorlens_core::power::{PowerExample, PowerSource, PowerSubmonoid};
use factorlens_core::{LengthSet, Rational, Result};

use crate::spec::{Input, MonoidSpec, DEFAULT_STORE_BOUND};
use crate::AppError;

/// Distances of lattice monoids are collected from sums of this many atoms.
pub const DELTA_ATOMS: u64 = 5;

#[derive(Debug, Clone)]
pub enum Target {
    Presentation {
        kind: &'static str,
        presentation: AtomPresentation,
    },
    Realized(RealizedKrull),
    PowerExample {
        example: PowerExample,
        bound: u64,
    },
    Power(PowerSubmonoid),
    Counterexample(CounterexampleSpec),
    Family(FamilySpec),
}

/// Any union source behind one type.
pub struct AnySource(Box<dyn UnionSource + Send + Sync>);

impl AnySource {
    pub fn new<S: UnionSource + Send + Sync + 'static>(s: S) -> Self {
        AnySource(Box::new(s))
    }
}

impl UnionSource for AnySource {
    fn union(&self, k: u64) -> Result<LengthSet> {
        self.0.union(k)
    }

    fn distances(&self) -> Result<Distances> {
        self.0.distances()
    }

    fn elasticity(&self) -> Option<Rational> {
        self.0.elasticity()
    }
}

/// A power submonoid given by generators. Unions come from enumeration;
/// distances only from the stored elements.
pub struct PowerStoreSource {
    pub monoid: PowerSubmonoid,
    pub budget: u64,
}

impl UnionSource for PowerStoreSource {
    fn union(&self, k: u64) -> Result<LengthSet> {
        Ok(self.monoid.unions(k, self.budget)?.union)
    }

    fn distances(&self) -> Result<Distances> {
        let set = self.monoid.store().fold(LengthSet::new(), |acc, x| {
            acc.union(&self.monoid.length_set(x).delta_set())
        });
        Ok(Distances {
            set,
            certification: Certification::Partial,
        })
    }
}

impl Target {
    pub fn build(input: &Input, budget: u64) -> std::result::Result<Target, AppError> {
        let bad = |e: factorlens_core::Error| AppError::Input(e.to_string());
        Ok(match input {
            Input::Family(f) => Target::Family(f.clone()),
            Input::Monoid(MonoidSpec::Lattice {
                dim,
                atoms,
                grading,
            }) => Target::Presentation {
                kind: "lattice",
                presentation: AtomPresentation::new(*dim, atoms.clone(), grading.clone())
                    .map_err(bad)?,
            },
            Input::Monoid(MonoidSpec::ZeroSum { group, support }) => Target::Presentation {
                kind: "zero_sum",
                presentation: zero_sum_presentation(group, support.as_deref()).map_err(bad)?,
            },
            Input::Monoid(MonoidSpec::Realize { lengths }) => {
                Target::Realized(RealizedKrull::realize(lengths).map_err(bad)?)
            }
            Input::Monoid(MonoidSpec::Power {
                n,
                generators,
                bound,
            }) => {
                let bound = bound.unwrap_or(DEFAULT_STORE_BOUND);
                match (n, generators) {
                    (Some(n), None) => Target::PowerExample {
                        example: PowerExample::new(*n).map_err(bad)?,
                        bound,
                    },
                    (None, Some(gens)) => {
                        if gens.iter().any(|g| g.greatest() > bound) {
                            return Err(AppError::Input(format!(
                                "every generator must have max <= bound = {bound}"
                            )));
                        }
                        Target::Power(PowerSubmonoid::new(gens.clone(), bound, budget)?)
                    }
                    _ => {
                        return Err(AppError::Input(
                            "a power spec needs exactly one of `n` and `generators`".into(),
                        ))
                    }
                }
            }
            Input::Monoid(MonoidSpec::Counterexample { d, horizon }) => Target::Counterexample(
                CounterexampleSpec::admissible_instance(*d, *horizon).map_err(bad)?,
            ),
        })
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Target::Presentation { kind, .. } => kind,
            Target::Realized(_) => "realize",
            Target::PowerExample { .. } | Target::Power(_) => "power",
            Target::Counterexample(_) => "counterexample",
            Target::Family(_) => "family",
        }
    }

    /// The lattice presentation, when there is one.
    pub fn presentation(&self) -> Option<&AtomPresentation> {
        match self {
            Target::Presentation { presentation, .. } => Some(presentation),
            Target::Realized(r) => Some(r.presentation()),
            _ => None,
        }
    }

    pub fn source(&self, budget: u64) -> std::result::Result<AnySource, AppError> {
        Ok(match self {
            Target::Presentation { presentation, .. } => {
                AnySource::new(MonoidSource::new(presentation.clone(), budget, DELTA_ATOMS))
            }
            Target::Realized(r) => AnySource::new(RealizedSource {
                realized: r.clone(),
                budget,
            }),
            Target::PowerExample { example, .. } => {
                AnySource::new(PowerSource::new(*example, budget)?)
            }
            Target::Power(m) => AnySource::new(PowerStoreSource {
                monoid: m.clone(),
                budget,
            }),
            Target::Counterexample(spec) => AnySource::new(CounterexampleSource {
                spec: spec.clone(),
                route: UnionRoute::ClosedForm,
            }),
            Target::Family(f) => AnySource::new(f.clone()),
        })
    }

    /// Default horizon of the commands.
    pub fn default_k_max(&self) -> u64 {
        match self {
            Target::Counterexample(spec) => spec.horizon(),
            Target::PowerExample { example, .. } => 2 * example.n + 3,
            _ => 6,
        }
    }
}
