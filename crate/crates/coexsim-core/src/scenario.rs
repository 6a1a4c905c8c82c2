//! Seeded deployment generation.
//!
//! Two site families are supported. *Indoor* is a dual-stripe residential
//! floor: two rows of ten 10 m × 10 m × 3 m apartments separated by a 10 m
//! corridor, with per-wall attenuation (or the same geometry with the
//! internal walls removed). *Outdoor* is a 346 m × 389 m study area with
//! randomly overlaid buildings; APs sit at the roof-top height of their
//! nearest building and each serves one user inside a 50 m disc.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::geom::{Box3, Rect, Vec3, Wall, WallAxis};
use crate::seed;
use crate::{Error, Population, Tech};

pub const APARTMENT_SIDE: f64 = 10.0;
pub const APARTMENT_HEIGHT: f64 = 3.0;
pub const APARTMENTS_PER_STRIPE: usize = 10;
pub const CORRIDOR_WIDTH: f64 = 10.0;
pub const INDOOR_CAPACITY: usize = 2 * 2 * APARTMENTS_PER_STRIPE;

pub const OUTDOOR_WIDTH: f64 = 346.0;
pub const OUTDOOR_HEIGHT: f64 = 389.0;
pub const USER_RADIUS: f64 = 50.0;
pub const USER_HEIGHT: f64 = 1.5;
pub const MIN_AP_SEPARATION: f64 = 5.0;
pub const DEFAULT_OUTDOOR_LOCATIONS: usize = 20;
pub const FLOOR_HEIGHT: f64 = 3.0;

// Dense urban block coverage (~40% of the study area) so that a realistic
// share of AP–user links is blocked by at least one building.
const BUILDING_TARGET: usize = 80;
const BUILDING_ATTEMPTS: usize = 4000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScenarioKind {
    Indoor,
    IndoorNoWalls,
    Outdoor,
}

impl ScenarioKind {
    pub fn is_indoor(self) -> bool {
        !matches!(self, ScenarioKind::Outdoor)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ScenarioKind::Indoor => "indoor",
            ScenarioKind::IndoorNoWalls => "indoor_no_walls",
            ScenarioKind::Outdoor => "outdoor",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Building {
    pub footprint: Rect,
    pub floors: u32,
}

impl Building {
    pub fn rooftop(&self) -> f64 {
        FLOOR_HEIGHT * self.floors as f64
    }
}

/// A horizontal floor slab (for wall/floor counting); none of the shipped
/// layouts are multi-storey, but the counting stays generic.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct FloorPlane {
    pub z: f64,
    pub extent: Rect,
}

#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct SiteLayout {
    pub kind: ScenarioKind,
    pub apartments: Vec<Box3>,
    pub walls: Vec<Wall>,
    pub floor_planes: Vec<FloorPlane>,
    pub buildings: Vec<Building>,
    pub study_area: Rect,
    pub internal_walls_present: bool,
}

impl SiteLayout {
    /// The dual-stripe floor: apartments 0–9 in the lower stripe (left to
    /// right), 10–19 in the upper stripe, corridor in between.
    pub fn indoor(kind: ScenarioKind) -> SiteLayout {
        debug_assert!(kind.is_indoor());
        let len = APARTMENT_SIDE * APARTMENTS_PER_STRIPE as f64;
        let stripe_y = [0.0, APARTMENT_SIDE + CORRIDOR_WIDTH];
        let mut apartments = Vec::with_capacity(2 * APARTMENTS_PER_STRIPE);
        for &y0 in &stripe_y {
            for col in 0..APARTMENTS_PER_STRIPE {
                let x0 = col as f64 * APARTMENT_SIDE;
                apartments.push(Box3 {
                    min: Vec3::new(x0, y0, 0.0),
                    max: Vec3::new(x0 + APARTMENT_SIDE, y0 + APARTMENT_SIDE, APARTMENT_HEIGHT),
                });
            }
        }
        let walls_present = kind == ScenarioKind::Indoor;
        let mut walls = Vec::new();
        if walls_present {
            // partitions between neighbouring apartments in each stripe
            for &y0 in &stripe_y {
                for col in 1..APARTMENTS_PER_STRIPE {
                    walls.push(Wall {
                        axis: WallAxis::X,
                        coord: col as f64 * APARTMENT_SIDE,
                        h_lo: y0,
                        h_hi: y0 + APARTMENT_SIDE,
                        z_lo: 0.0,
                        z_hi: APARTMENT_HEIGHT,
                    });
                }
            }
            // corridor-facing walls, full building length
            for coord in [APARTMENT_SIDE, APARTMENT_SIDE + CORRIDOR_WIDTH] {
                walls.push(Wall {
                    axis: WallAxis::Y,
                    coord,
                    h_lo: 0.0,
                    h_hi: len,
                    z_lo: 0.0,
                    z_hi: APARTMENT_HEIGHT,
                });
            }
        }
        SiteLayout {
            kind,
            apartments,
            walls,
            floor_planes: Vec::new(),
            buildings: Vec::new(),
            study_area: Rect::new(0.0, 0.0, len, 2.0 * APARTMENT_SIDE + CORRIDOR_WIDTH),
            internal_walls_present: walls_present,
        }
    }

    /// Count internal walls and floor slabs strictly pierced by the segment
    /// a–b. Grazing along a plane or touching its rim does not count, and
    /// layouts without internal walls always report zero.
    pub fn wall_crossings(&self, a: Vec3, b: Vec3) -> (usize, usize) {
        let n_walls = self.walls.iter().filter(|w| w.crossed_by(a, b)).count();
        let n_floors = self
            .floor_planes
            .iter()
            .filter(|f| {
                let dz = b.z - a.z;
                if dz == 0.0 {
                    return false;
                }
                let t = (f.z - a.z) / dz;
                if t <= 0.0 || t >= 1.0 {
                    return false;
                }
                f.extent
                    .contains_strict(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y))
            })
            .count();
        (n_walls, n_floors)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeKind {
    Ap,
    User,
}

#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Node {
    pub id: usize,
    pub kind: NodeKind,
    pub population: Population,
    pub technology: Tech,
    pub position: Vec3,
    /// users only: the AP they are served by
    pub associated_ap: Option<usize>,
}

/// One generated network: APs first (population A, then B), users after, the
/// user of AP `i` at id `n_aps + i`.
#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Deployment {
    pub layout: SiteLayout,
    pub nodes: Vec<Node>,
    pub seed: u64,
    pub n_pop_a: usize,
    pub n_pop_b: usize,
}

impl Deployment {
    pub fn n_aps(&self) -> usize {
        self.n_pop_a + self.n_pop_b
    }

    pub fn user_of(&self, ap: usize) -> usize {
        self.n_aps() + ap
    }

    pub fn ap(&self, ap: usize) -> &Node {
        &self.nodes[ap]
    }

    pub fn population_of(&self, ap: usize) -> Population {
        if ap < self.n_pop_a {
            Population::A
        } else {
            Population::B
        }
    }

    fn push_pair(&mut self, ap_pos: Vec3, user_pos: Vec3, population: Population, tech: Tech) {
        // ids are assigned later by `finish_ids`; store APs now, users in a
        // parallel list via position in `nodes`
        self.nodes.push(Node {
            id: 0,
            kind: NodeKind::Ap,
            population,
            technology: tech,
            position: ap_pos,
            associated_ap: None,
        });
        self.nodes.push(Node {
            id: 0,
            kind: NodeKind::User,
            population,
            technology: tech,
            position: user_pos,
            associated_ap: None,
        });
    }

    /// Reorder interleaved (AP, user) pushes into the id scheme above.
    fn finish_ids(&mut self) {
        let pairs = self.nodes.len() / 2;
        let mut aps = Vec::with_capacity(pairs);
        let mut users = Vec::with_capacity(pairs);
        for chunk in self.nodes.chunks(2) {
            aps.push(chunk[0]);
            users.push(chunk[1]);
        }
        self.nodes.clear();
        for (i, mut ap) in aps.into_iter().enumerate() {
            ap.id = i;
            self.nodes.push(ap);
        }
        for (i, mut user) in users.into_iter().enumerate() {
            user.id = pairs + i;
            user.associated_ap = Some(i);
            self.nodes.push(user);
        }
    }
}

fn uniform_in(apt: &Box3, rng: &mut ChaCha8Rng) -> Vec3 {
    Vec3::new(
        rng.random_range(apt.min.x..apt.max.x),
        rng.random_range(apt.min.y..apt.max.y),
        rng.random_range(apt.min.z..apt.max.z),
    )
}

/// Generate an indoor deployment. Population-A pairs are placed in distinct
/// apartments; population-B pairs fill unoccupied apartments first and only
/// then double up with a single resident pair, so no apartment ever holds
/// more than two pairs.
pub fn generate_indoor(
    seed: u64,
    n_pop_a: usize,
    n_pop_b: usize,
    tech_a: Tech,
    tech_b: Tech,
    kind: ScenarioKind,
) -> Result<Deployment, Error> {
    if !kind.is_indoor() {
        return Err(Error::Config(String::from("indoor generator given an outdoor kind")));
    }
    let n_apartments = 2 * APARTMENTS_PER_STRIPE;
    if n_pop_a > n_apartments {
        return Err(Error::Capacity(format!(
            "population A needs {n_pop_a} distinct apartments but only {n_apartments} exist"
        )));
    }
    if n_pop_a + n_pop_b > INDOOR_CAPACITY {
        return Err(Error::Capacity(format!(
            "{} AP-user pairs exceed the {} apartment slots (2 per apartment)",
            n_pop_a + n_pop_b,
            INDOOR_CAPACITY
        )));
    }

    let layout = SiteLayout::indoor(kind);
    let mut rng = seed::stream(seed, seed::purpose::DEPLOYMENT);
    let mut dep = Deployment {
        layout,
        nodes: Vec::new(),
        seed,
        n_pop_a,
        n_pop_b,
    };
    let mut occupancy = [0usize; 2 * APARTMENTS_PER_STRIPE];

    let chosen = rand::seq::index::sample(&mut rng, n_apartments, n_pop_a);
    for apt_idx in chosen.iter() {
        occupancy[apt_idx] += 1;
        let apt = dep.layout.apartments[apt_idx];
        let ap = uniform_in(&apt, &mut rng);
        let user = uniform_in(&apt, &mut rng);
        dep.push_pair(ap, user, Population::A, tech_a);
    }

    let mut candidates: Vec<usize> = Vec::with_capacity(n_apartments);
    for _ in 0..n_pop_b {
        for target in [0usize, 1] {
            candidates.clear();
            candidates.extend((0..n_apartments).filter(|&i| occupancy[i] == target));
            if !candidates.is_empty() {
                break;
            }
        }
        debug_assert!(!candidates.is_empty(), "capacity precondition violated");
        let apt_idx = candidates[rng.random_range(0..candidates.len())];
        occupancy[apt_idx] += 1;
        let apt = dep.layout.apartments[apt_idx];
        let ap = uniform_in(&apt, &mut rng);
        let user = uniform_in(&apt, &mut rng);
        dep.push_pair(ap, user, Population::B, tech_b);
    }

    debug_assert!(occupancy.iter().all(|&c| c <= 2));
    dep.finish_ids();
    Ok(dep)
}

/// Where outdoor AP ground positions come from.
#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub enum ApLocations {
    /// Uniform draws over the study area, re-drawn within 5 m of an earlier
    /// AP, mimicking a measured macro-site list of the given size.
    Synthetic { count: usize },
    /// Ground positions loaded from a file (metres).
    Provided(Vec<(f64, f64)>),
}

impl Default for ApLocations {
    fn default() -> Self {
        ApLocations::Synthetic {
            count: DEFAULT_OUTDOOR_LOCATIONS,
        }
    }
}

/// Generate an outdoor deployment: overlay buildings, resolve AP locations,
/// partition them between the populations, lift each AP to the roof-top of
/// its nearest building, and drop one user per AP inside a 50 m disc.
pub fn generate_outdoor(
    seed: u64,
    locations: &ApLocations,
    n_pop_a: usize,
    n_pop_b: usize,
    tech_a: Tech,
    tech_b: Tech,
) -> Result<Deployment, Error> {
    let study_area = Rect::new(0.0, 0.0, OUTDOOR_WIDTH, OUTDOOR_HEIGHT);
    let mut rng = seed::stream(seed, seed::purpose::DEPLOYMENT);

    let mut buildings: Vec<Building> = Vec::new();
    for _ in 0..BUILDING_ATTEMPTS {
        if buildings.len() >= BUILDING_TARGET {
            break;
        }
        let along_x = rng.random_range(0..2u32) == 0;
        let len = APARTMENT_SIDE * rng.random_range(3..=10u32) as f64;
        let floors = rng.random_range(3..=5u32);
        let (w, h) = if along_x {
            (len, APARTMENT_SIDE)
        } else {
            (APARTMENT_SIDE, len)
        };
        let x0 = rng.random_range(0.0..OUTDOOR_WIDTH - w);
        let y0 = rng.random_range(0.0..OUTDOOR_HEIGHT - h);
        let fp = Rect::new(x0, y0, x0 + w, y0 + h);
        if buildings.iter().all(|b| !b.footprint.overlaps_strict(&fp)) {
            buildings.push(Building { footprint: fp, floors });
        }
    }

    let ground: Vec<(f64, f64)> = match locations {
        ApLocations::Provided(points) => points.clone(),
        ApLocations::Synthetic { count } => {
            let mut pts: Vec<(f64, f64)> = Vec::with_capacity(*count);
            let mut attempts = 0usize;
            while pts.len() < *count {
                attempts += 1;
                if attempts > 100_000 {
                    return Err(Error::Capacity(String::from(
                        "could not place synthetic AP locations with 5 m separation",
                    )));
                }
                let x = rng.random_range(0.0..OUTDOOR_WIDTH);
                let y = rng.random_range(0.0..OUTDOOR_HEIGHT);
                if pts
                    .iter()
                    .all(|&(px, py)| libm::sqrt((px - x) * (px - x) + (py - y) * (py - y)) >= MIN_AP_SEPARATION)
                {
                    pts.push((x, y));
                }
            }
            pts
        }
    };

    if n_pop_a + n_pop_b > ground.len() {
        return Err(Error::Capacity(format!(
            "{} APs requested but only {} locations available",
            n_pop_a + n_pop_b,
            ground.len()
        )));
    }

    let mut order: Vec<usize> = (0..ground.len()).collect();
    for i in (1..order.len()).rev() {
        order.swap(i, rng.random_range(0..=i));
    }

    let layout = SiteLayout {
        kind: ScenarioKind::Outdoor,
        apartments: Vec::new(),
        walls: Vec::new(),
        floor_planes: Vec::new(),
        buildings,
        study_area,
        internal_walls_present: false,
    };

    let mut dep = Deployment {
        layout,
        nodes: Vec::new(),
        seed,
        n_pop_a,
        n_pop_b,
    };

    for (slot, &loc_idx) in order[..n_pop_a + n_pop_b].iter().enumerate() {
        let (x, y) = ground[loc_idx];
        let z = rooftop_height(&dep.layout.buildings, x, y);
        let ap_pos = Vec3::new(x, y, z);
        let user_pos = loop {
            let r = USER_RADIUS * libm::sqrt(rng.random_range(0.0..1.0f64));
            let theta = rng.random_range(0.0..core::f64::consts::TAU);
            let (ux, uy) = (x + r * libm::cos(theta), y + r * libm::sin(theta));
            if dep.layout.study_area.contains(ux, uy) {
                break Vec3::new(ux, uy, USER_HEIGHT);
            }
        };
        let (population, tech) = if slot < n_pop_a {
            (Population::A, tech_a)
        } else {
            (Population::B, tech_b)
        };
        dep.push_pair(ap_pos, user_pos, population, tech);
    }

    dep.finish_ids();
    Ok(dep)
}

/// Roof-top height of the building nearest to (x, y); ties break to the
/// lowest building index, and an empty building list falls back to one
/// storey so the generator stays total.
fn rooftop_height(buildings: &[Building], x: f64, y: f64) -> f64 {
    let mut best: Option<(f64, usize)> = None;
    for (i, b) in buildings.iter().enumerate() {
        let d = b.footprint.distance_to(x, y);
        if best.map_or(true, |(bd, _)| d < bd) {
            best = Some((d, i));
        }
    }
    best.map_or(FLOOR_HEIGHT, |(_, i)| buildings[i].rooftop())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indoor_layout_shape() {
        let l = SiteLayout::indoor(ScenarioKind::Indoor);
        assert_eq!(l.apartments.len(), 20);
        // 9 partitions per stripe + 2 corridor walls
        assert_eq!(l.walls.len(), 20);
        assert_eq!(l.study_area, Rect::new(0.0, 0.0, 100.0, 30.0));
        for apt in &l.apartments {
            assert_eq!(apt.max.x - apt.min.x, 10.0);
            assert_eq!(apt.max.y - apt.min.y, 10.0);
            assert_eq!(apt.max.z - apt.min.z, 3.0);
        }
        assert!(SiteLayout::indoor(ScenarioKind::IndoorNoWalls).walls.is_empty());
    }

    #[test]
    fn indoor_full_house() {
        let d = generate_indoor(1, 10, 30, Tech::Wifi, Tech::Wifi, ScenarioKind::Indoor).unwrap();
        assert_eq!(d.n_aps(), 40);
        assert_eq!(d.nodes.len(), 80);
        // every apartment holds exactly two pairs
        let mut counts = [0usize; 20];
        for ap in 0..d.n_aps() {
            let pos = d.ap(ap).position;
            let apt = d
                .layout
                .apartments
                .iter()
                .position(|a| a.contains(pos))
                .expect("AP inside an apartment");
            counts[apt] += 1;
        }
        assert!(counts.iter().all(|&c| c == 2), "{counts:?}");
    }

    #[test]
    fn indoor_empty_and_capacity() {
        let d = generate_indoor(1, 0, 0, Tech::Wifi, Tech::Laa, ScenarioKind::Indoor).unwrap();
        assert!(d.nodes.is_empty());
        assert_eq!(d.layout.apartments.len(), 20);
        assert!(matches!(
            generate_indoor(1, 10, 31, Tech::Wifi, Tech::Laa, ScenarioKind::Indoor),
            Err(Error::Capacity(_))
        ));
        assert!(matches!(
            generate_indoor(1, 21, 0, Tech::Wifi, Tech::Laa, ScenarioKind::Indoor),
            Err(Error::Capacity(_))
        ));
    }

    #[test]
    fn user_pairing_and_ids() {
        let d = generate_indoor(9, 4, 3, Tech::Wifi, Tech::Lteu, ScenarioKind::Indoor).unwrap();
        assert_eq!(d.n_aps(), 7);
        for ap in 0..d.n_aps() {
            let u = &d.nodes[d.user_of(ap)];
            assert_eq!(u.kind, NodeKind::User);
            assert_eq!(u.associated_ap, Some(ap));
            assert_eq!(u.technology, d.ap(ap).technology);
            assert_eq!(u.population, d.ap(ap).population);
        }
        assert_eq!(d.ap(3).population, Population::A);
        assert_eq!(d.ap(4).population, Population::B);
        assert_eq!(d.ap(4).technology, Tech::Lteu);
    }

    #[test]
    fn determinism_bitwise() {
        let a = generate_indoor(77, 10, 10, Tech::Wifi, Tech::Laa, ScenarioKind::Indoor).unwrap();
        let b = generate_indoor(77, 10, 10, Tech::Wifi, Tech::Laa, ScenarioKind::Indoor).unwrap();
        assert_eq!(a, b);
        let c = generate_outdoor(3, &ApLocations::default(), 10, 10, Tech::Wifi, Tech::Laa).unwrap();
        let d = generate_outdoor(3, &ApLocations::default(), 10, 10, Tech::Wifi, Tech::Laa).unwrap();
        assert_eq!(c, d);
    }

    #[test]
    fn placement_fills_before_doubling() {
        // with A=10, B=5 there must be >=5 empty apartments and no apartment
        // may hold two B pairs while another is still empty
        for s in 0..1000u64 {
            let d = generate_indoor(s, 10, 5, Tech::Wifi, Tech::Laa, ScenarioKind::Indoor).unwrap();
            let mut count = [0usize; 20];
            let mut b_count = [0usize; 20];
            for ap in 0..d.n_aps() {
                let pos = d.ap(ap).position;
                let apt = d.layout.apartments.iter().position(|a| a.contains(pos)).unwrap();
                count[apt] += 1;
                if d.ap(ap).population == Population::B {
                    b_count[apt] += 1;
                }
            }
            assert!(count.iter().filter(|&&c| c == 0).count() >= 5);
            assert!(count.iter().all(|&c| c <= 2));
            // 15 pairs in 20 apartments: nobody needs to double up
            assert!(count.iter().all(|&c| c <= 1), "seed {s}: {count:?}");
            assert!(b_count.iter().all(|&c| c <= 1));
        }
    }

    #[test]
    fn occupancy_cap_holds_at_random_loads() {
        for s in 0..200u64 {
            let n_a = (seed::mix64(s) % 21) as usize;
            let n_b = (seed::mix64(s ^ 0xabcd) % (41 - n_a as u64)) as usize;
            let d = generate_indoor(s, n_a, n_b, Tech::Wifi, Tech::Laa, ScenarioKind::Indoor).unwrap();
            let mut count = [0usize; 20];
            for ap in 0..d.n_aps() {
                let pos = d.ap(ap).position;
                let apt = d.layout.apartments.iter().position(|a| a.contains(pos)).unwrap();
                count[apt] += 1;
            }
            assert!(count.iter().all(|&c| c <= 2));
        }
    }

    #[test]
    fn outdoor_shape() {
        let d = generate_outdoor(3, &ApLocations::default(), 10, 10, Tech::Wifi, Tech::Laa).unwrap();
        assert_eq!(d.n_aps(), 20);
        let area_km2 = (OUTDOOR_WIDTH * OUTDOOR_HEIGHT) / 1e6;
        let density = d.n_aps() as f64 / area_km2;
        assert!((7.0..=150.0).contains(&density), "density {density}");
        for ap in 0..d.n_aps() {
            let a = d.ap(ap).position;
            let u = d.nodes[d.user_of(ap)].position;
            assert!(a.dist_2d(u) <= USER_RADIUS + 1e-9);
            assert_eq!(u.z, USER_HEIGHT);
            assert!(d.layout.study_area.contains(u.x, u.y));
            assert!(a.z >= 3.0 * FLOOR_HEIGHT - 1e-9 || d.layout.buildings.is_empty());
        }
        for (i, b) in d.layout.buildings.iter().enumerate() {
            assert!((3..=5).contains(&b.floors));
            let w = b.footprint.x1 - b.footprint.x0;
            let h = b.footprint.y1 - b.footprint.y0;
            let len = w.max(h);
            assert!((w.min(h) - APARTMENT_SIDE).abs() < 1e-9);
            assert!((30.0 - 1e-9..=100.0 + 1e-9).contains(&len));
            for other in &d.layout.buildings[i + 1..] {
                assert!(!b.footprint.overlaps_strict(&other.footprint));
            }
        }
    }

    #[test]
    fn outdoor_min_separation_and_partition() {
        let d = generate_outdoor(11, &ApLocations::default(), 8, 12, Tech::Wifi, Tech::Lteu).unwrap();
        for i in 0..d.n_aps() {
            for j in i + 1..d.n_aps() {
                assert!(d.ap(i).position.dist_2d(d.ap(j).position) >= MIN_AP_SEPARATION);
            }
        }
        assert_eq!((0..8).filter(|&a| d.population_of(a) == Population::A).count(), 8);
    }

    #[test]
    fn outdoor_provided_points_used_exactly_once() {
        let pts: Vec<(f64, f64)> = (0..20).map(|i| (10.0 + 15.0 * i as f64, 40.0)).collect();
        let d = generate_outdoor(3, &ApLocations::Provided(pts.clone()), 10, 10, Tech::Wifi, Tech::Laa)
            .unwrap();
        let mut used: Vec<(f64, f64)> = (0..d.n_aps())
            .map(|a| (d.ap(a).position.x, d.ap(a).position.y))
            .collect();
        used.sort_by(|p, q| p.partial_cmp(q).unwrap());
        let mut want = pts;
        want.sort_by(|p, q| p.partial_cmp(q).unwrap());
        assert_eq!(used, want);
    }

    #[test]
    fn outdoor_too_few_locations() {
        assert!(matches!(
            generate_outdoor(1, &ApLocations::Synthetic { count: 5 }, 10, 10, Tech::Wifi, Tech::Laa),
            Err(Error::Capacity(_))
        ));
    }

    #[test]
    fn single_outdoor_pair() {
        let d = generate_outdoor(3, &ApLocations::default(), 1, 0, Tech::Wifi, Tech::Laa).unwrap();
        assert_eq!(d.n_aps(), 1);
        assert!(d.ap(0).position.dist_2d(d.nodes[d.user_of(0)].position) <= USER_RADIUS);
    }

    #[test]
    fn wall_crossings_examples() {
        let l = SiteLayout::indoor(ScenarioKind::Indoor);
        // same apartment (apartment 0)
        let a = Vec3::new(2.0, 2.0, 1.5);
        let b = Vec3::new(8.0, 8.0, 1.5);
        assert_eq!(l.wall_crossings(a, b), (0, 0));
        // adjacent apartments: 0 -> 1
        let c = Vec3::new(12.0, 5.0, 1.5);
        assert_eq!(l.wall_crossings(a, c), (1, 0));
        // three apartments along the stripe: 0 -> 3
        let d = Vec3::new(35.0, 5.0, 1.5);
        assert_eq!(l.wall_crossings(a, d), (3, 0));
        // across the corridor: two corridor walls
        let e = Vec3::new(2.0, 25.0, 1.5);
        assert_eq!(l.wall_crossings(a, e), (2, 0));
        // symmetry & degenerate segment
        assert_eq!(l.wall_crossings(d, a), (3, 0));
        assert_eq!(l.wall_crossings(a, a), (0, 0));
    }

    #[test]
    fn no_walls_layout_reports_zero() {
        let l = SiteLayout::indoor(ScenarioKind::IndoorNoWalls);
        let a = Vec3::new(2.0, 2.0, 1.5);
        let d = Vec3::new(95.0, 25.0, 1.5);
        assert_eq!(l.wall_crossings(a, d), (0, 0));
    }

    #[test]
    fn wall_crossing_symmetry_random_pairs() {
        let l = SiteLayout::indoor(ScenarioKind::Indoor);
        let mut rng = seed::stream(5, 99);
        for _ in 0..500 {
            let a = Vec3::new(
                rng.random_range(0.0..100.0),
                rng.random_range(0.0..30.0),
                rng.random_range(0.0..3.0),
            );
            let b = Vec3::new(
                rng.random_range(0.0..100.0),
                rng.random_range(0.0..30.0),
                rng.random_range(0.0..3.0),
            );
            assert_eq!(l.wall_crossings(a, b), l.wall_crossings(b, a));
        }
    }

    #[test]
    fn floor_plane_counting() {
        let mut l = SiteLayout::indoor(ScenarioKind::Indoor);
        l.floor_planes.push(FloorPlane {
            z: 3.0,
            extent: Rect::new(0.0, 0.0, 100.0, 30.0),
        });
        let a = Vec3::new(5.0, 5.0, 1.0);
        let b = Vec3::new(6.0, 5.0, 5.0);
        assert_eq!(l.wall_crossings(a, b).1, 1);
        let c = Vec3::new(6.0, 5.0, 2.0);
        assert_eq!(l.wall_crossings(a, c).1, 0);
    }
}
