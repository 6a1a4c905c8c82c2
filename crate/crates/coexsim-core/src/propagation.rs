//! Link losses: indoor multi-wall-floor path loss, outdoor LOS/NLOS
//! street-canyon / over-rooftop loss, and per-realization log-normal
//! shadowing shared by both directions of every link.

use alloc::vec::Vec;

use rand_distr::{Distribution, Normal};

use crate::scenario::{Deployment, ScenarioKind};
use crate::seed;

/// Coefficients of `A + B·log10(d_m) + C·log10(f_MHz)`.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LogDistance {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct IndoorParams {
    /// loss at the 1 m reference distance
    pub reference_loss_db: f64,
    /// path-loss exponent (slope is 10·exponent per decade)
    pub exponent: f64,
    pub wall_loss_db: f64,
    pub floor_loss_db: f64,
}

impl Default for IndoorParams {
    fn default() -> Self {
        IndoorParams {
            reference_loss_db: 46.8,
            exponent: 2.0,
            wall_loss_db: 5.0,
            floor_loss_db: 18.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PropagationParams {
    pub indoor: IndoorParams,
    pub outdoor_los: LogDistance,
    pub outdoor_nlos: LogDistance,
    pub shadowing_sigma_indoor_db: f64,
    pub shadowing_sigma_outdoor_db: f64,
    /// reference carrier; per-link evaluation uses the transmitter's
    /// channel center, this is the default when no channel is in play
    pub carrier_freq_hz: f64,
    /// apply shadowing on AP–AP carrier-sense links (always applied on
    /// AP–user links)
    pub shadow_on_cs_links: bool,
}

impl Default for PropagationParams {
    fn default() -> Self {
        PropagationParams {
            indoor: IndoorParams::default(),
            // free-space form
            outdoor_los: LogDistance {
                a: -27.55,
                b: 20.0,
                c: 20.0,
            },
            // steeper over-rooftop slope, intercept chosen so the two
            // curves meet at 10 m
            outdoor_nlos: LogDistance {
                a: -47.55,
                b: 40.0,
                c: 20.0,
            },
            shadowing_sigma_indoor_db: 4.0,
            shadowing_sigma_outdoor_db: 7.0,
            carrier_freq_hz: 5.25e9,
            shadow_on_cs_links: true,
        }
    }
}

impl PropagationParams {
    pub fn shadowing_sigma_db(&self, kind: ScenarioKind) -> f64 {
        if kind.is_indoor() {
            self.shadowing_sigma_indoor_db
        } else {
            self.shadowing_sigma_outdoor_db
        }
    }
}

/// Indoor multi-wall-floor loss. Distance is clamped below at 0.1 m.
pub fn mwf_loss(distance_m: f64, n_walls: usize, n_floors: usize, p: &IndoorParams) -> f64 {
    let d = distance_m.max(0.1);
    p.reference_loss_db
        + 10.0 * p.exponent * libm::log10(d)
        + n_walls as f64 * p.wall_loss_db
        + n_floors as f64 * p.floor_loss_db
}

/// Outdoor loss with the LOS or NLOS coefficient set. Distance is clamped
/// below at 1 m.
pub fn outdoor_loss(distance_m: f64, los: bool, freq_hz: f64, p: &PropagationParams) -> f64 {
    let d = distance_m.max(1.0);
    let c = if los { &p.outdoor_los } else { &p.outdoor_nlos };
    c.a + c.b * libm::log10(d) + c.c * libm::log10(freq_hz / 1.0e6)
}

/// LOS iff the 2-D segment a–b pierces no building footprint interior;
/// touching an edge or corner still counts as LOS.
pub fn los_classify(a: crate::geom::Vec3, b: crate::geom::Vec3, buildings: &[crate::scenario::Building]) -> bool {
    buildings
        .iter()
        .all(|bl| !bl.footprint.segment_crosses_interior(a, b))
}

/// Everything about a link that is fixed once the deployment exists:
/// geometry plus the realization's shadowing draw.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinkGeometry {
    pub dist_m: f64,
    pub n_walls: usize,
    pub n_floors: usize,
    pub los: bool,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinkLoss {
    pub path_db: f64,
    pub shadow_db: f64,
}

impl LinkLoss {
    pub fn total_db(&self) -> f64 {
        self.path_db + self.shadow_db
    }
}

/// Symmetric per-pair table: geometry for every unordered node pair and one
/// zero-mean normal shadowing draw per pair, fixed for the realization.
#[derive(Clone, Debug)]
pub struct LinkTable {
    n: usize,
    kind: ScenarioKind,
    geoms: Vec<LinkGeometry>,
    shadow: Vec<f64>,
}

impl LinkTable {
    /// Build geometry and shadowing for all node pairs of a deployment.
    /// Reciprocity holds by construction: (i, j) and (j, i) are one entry.
    ///
    /// Shadowing is keyed by each pair's stable identity (population, role,
    /// index within the population) rather than by enumeration order:
    /// growing a population appends nodes without disturbing the draws of
    /// existing links, so campaigns differing only in population size or
    /// technology share their worlds — common random numbers across sweep
    /// cells, which is what makes swept medians move smoothly.
    pub fn build(dep: &Deployment, seed: u64, params: &PropagationParams) -> LinkTable {
        let n = dep.nodes.len();
        let sigma = params.shadowing_sigma_db(dep.layout.kind);
        let normal = Normal::new(0.0, sigma).expect("sigma >= 0");
        let shadow_parent = seed::child_seed(seed, seed::purpose::SHADOWING);
        let stable_id = |x: usize| -> u64 {
            let (role, ap) = if x < dep.n_aps() {
                (0u64, x)
            } else {
                (1u64, x - dep.n_aps())
            };
            let (pop, idx) = if ap < dep.n_pop_a {
                (0u64, ap)
            } else {
                (1u64, ap - dep.n_pop_a)
            };
            ((idx as u64) << 2) | (pop << 1) | role
        };
        let mut geoms = Vec::with_capacity(n * (n - 1) / 2);
        let mut shadow = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                let a = dep.nodes[i].position;
                let b = dep.nodes[j].position;
                let (n_walls, n_floors) = if dep.layout.kind.is_indoor() {
                    dep.layout.wall_crossings(a, b)
                } else {
                    (0, 0)
                };
                let los = if dep.layout.kind.is_indoor() {
                    true
                } else {
                    los_classify(a, b, &dep.layout.buildings)
                };
                geoms.push(LinkGeometry {
                    dist_m: a.dist(b),
                    n_walls,
                    n_floors,
                    los,
                });
                shadow.push(if sigma == 0.0 {
                    0.0
                } else {
                    let (lo, hi) = {
                        let (a, b) = (stable_id(i), stable_id(j));
                        if a < b { (a, b) } else { (b, a) }
                    };
                    debug_assert!(hi < (1 << 32), "node index overflows the pair key");
                    let mut rng = seed::stream(shadow_parent, (lo << 32) | hi);
                    normal.sample(&mut rng)
                });
            }
        }
        LinkTable {
            n,
            kind: dep.layout.kind,
            geoms,
            shadow,
        }
    }

    fn pair_index(&self, i: usize, j: usize) -> usize {
        debug_assert!(i != j && i < self.n && j < self.n);
        let (lo, hi) = if i < j { (i, j) } else { (j, i) };
        lo * self.n - lo * (lo + 1) / 2 + (hi - lo - 1)
    }

    pub fn geometry(&self, i: usize, j: usize) -> LinkGeometry {
        self.geoms[self.pair_index(i, j)]
    }

    pub fn shadow_db(&self, i: usize, j: usize) -> f64 {
        self.shadow[self.pair_index(i, j)]
    }

    /// Loss between nodes i and j at the given carrier, with or without
    /// the shadowing component (CS links may run path-only).
    pub fn loss(&self, i: usize, j: usize, freq_hz: f64, params: &PropagationParams, with_shadow: bool) -> LinkLoss {
        let idx = self.pair_index(i, j);
        let g = self.geoms[idx];
        let path_db = if self.kind.is_indoor() {
            mwf_loss(g.dist_m, g.n_walls, g.n_floors, &params.indoor)
        } else {
            outdoor_loss(g.dist_m, g.los, freq_hz, params)
        };
        LinkLoss {
            path_db,
            shadow_db: if with_shadow { self.shadow[idx] } else { 0.0 },
        }
    }
}
