//! Cored hexagons on the triangular lattice, exhaustive enumeration of their
//! lozenge tilings, and the tiling statistics `n(T)` and `n₆(T)`.
//!
//! # Coordinates
//!
//! Lattice points are integer pairs `(x, y)` standing for `x·e₁ + y·e₂` with
//! `e₁` at 0° and `e₂` at 60°. The up-triangle `Up(r, c)` has vertices
//! `(c, r)`, `(c+1, r)`, `(c, r+1)`; the down-triangle `Down(r, c)` has
//! vertices `(c+1, r)`, `(c, r+1)`, `(c+1, r+1)`. Hence `Up(r, c)` is
//! adjacent to `Down(r, c)`, `Down(r, c−1)` and `Down(r−1, c)`.
//!
//! With `N = a+b+c+m` the hexagon is
//! `{x ≥ 0, y ≥ 0, x+y ≤ N, x ≤ N−c, y ≤ N−a, x+y ≥ b}`. Read clockwise from
//! the top its sides are `a, b+m, c, a+m, b, c+m`. The core is the up-triangle
//! of side `m` with lower-left vertex `(x₀, y₀)`, where `y₀ = (b+c)/2` and
//! `x₀ = (a+b)/2` when `a ≡ b ≡ c (mod 2)`. When `a` has the other parity
//! the core is moved half a unit parallel to side `a` towards side `b`,
//! giving `x₀ = (a+b−1)/2`.
//!
//! In these coordinates the lattice paths of the determinant formulas run
//! downwards: a path at `(X, Y)` crosses `Down(Y−1, X)` together with either
//! `Up(Y−1, X+1)` (a horizontal path step) or `Up(Y−1, X)` (a vertical path
//! step). The point `(X, Y)` has path coordinates `(X, X+Y−b)`, which puts
//! the start and end points exactly at `A_i` and `E_j`.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{CycloElement, CycloRing, Rational};

/// Default upper bound on the number of cells searched by the enumerator.
pub const DEFAULT_CELL_CAP: usize = 120;

/// Environment variable overriding [`DEFAULT_CELL_CAP`].
pub const CELL_CAP_ENV: &str = "CORED_HEX_CELL_CAP";

/// The cell cap in effect: the value of `CORED_HEX_CELL_CAP` if it parses,
/// else [`DEFAULT_CELL_CAP`].
pub fn cell_cap() -> usize {
    std::env::var(CELL_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_CELL_CAP)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Orientation {
    Up,
    Down,
}

/// A unit triangle. Ordering is row-major with `Up` before `Down`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub row: i64,
    pub col: i64,
    pub orient: Orientation,
}

impl Cell {
    pub fn up(row: i64, col: i64) -> Self {
        Cell { row, col, orient: Orientation::Up }
    }

    pub fn down(row: i64, col: i64) -> Self {
        Cell { row, col, orient: Orientation::Down }
    }

    /// Centroid scaled by 3, which is integral.
    fn centroid3(self) -> (i64, i64) {
        match self.orient {
            Orientation::Up => (3 * self.col + 1, 3 * self.row + 1),
            Orientation::Down => (3 * self.col + 2, 3 * self.row + 2),
        }
    }

    fn from_centroid3(x: i64, y: i64) -> Option<Self> {
        match (x.rem_euclid(3), y.rem_euclid(3)) {
            (1, 1) => Some(Cell::up((y - 1) / 3, (x - 1) / 3)),
            (2, 2) => Some(Cell::down((y - 2) / 3, (x - 2) / 3)),
            _ => None,
        }
    }

    /// The up to three edge-neighbours of opposite orientation.
    pub fn neighbours(self) -> [Cell; 3] {
        let (r, c) = (self.row, self.col);
        match self.orient {
            Orientation::Up => [Cell::down(r, c), Cell::down(r, c - 1), Cell::down(r - 1, c)],
            Orientation::Down => [Cell::up(r, c), Cell::up(r, c + 1), Cell::up(r + 1, c)],
        }
    }
}

/// Where the core sits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Placement {
    /// `a ≡ b ≡ c (mod 2)`: the truly central position.
    Centered,
    /// `a` has the other parity: shifted half a unit towards side `b`.
    ShiftedTowardB,
}

/// How the caller's side lengths were renamed to put the deviant side first.
///
/// Relabeling `(a,b,c) → (b,c,a)` or `(c,a,b)` rotates the side list of the
/// hexagon by two or four places, which describes the same region turned by
/// a multiple of 120°.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relabeling {
    Identity,
    /// Input `(a,b,c)` was read as `(b,c,a)`.
    RotateToB,
    /// Input `(a,b,c)` was read as `(c,a,b)`.
    RotateToC,
}

impl Relabeling {
    pub fn describe(self) -> &'static str {
        match self {
            Relabeling::Identity => "identity",
            Relabeling::RotateToB => "(a,b,c)->(b,c,a)",
            Relabeling::RotateToC => "(a,b,c)->(c,a,b)",
        }
    }
}

/// Parameters of the cored hexagon `C_{a,b,c}(m)`, normalized so that a
/// deviant-parity side is `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoredHexagon {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub m: u32,
    pub placement: Placement,
    pub relabeling: Relabeling,
}

impl CoredHexagon {
    /// Resolves the placement from the parities of `a, b, c`, relabeling the
    /// sides when the deviant one is `b` or `c`.
    pub fn new(a: u32, b: u32, c: u32, m: u32) -> Self {
        let (pa, pb, pc) = (a % 2, b % 2, c % 2);
        let (sides, placement, relabeling) = if pa == pb && pb == pc {
            ((a, b, c), Placement::Centered, Relabeling::Identity)
        } else if pb == pc {
            ((a, b, c), Placement::ShiftedTowardB, Relabeling::Identity)
        } else if pa == pc {
            ((b, c, a), Placement::ShiftedTowardB, Relabeling::RotateToB)
        } else {
            ((c, a, b), Placement::ShiftedTowardB, Relabeling::RotateToC)
        };
        CoredHexagon { a: sides.0, b: sides.1, c: sides.2, m, placement, relabeling }
    }

    /// The cyclically symmetric case `C_a(m) = C_{a,a,a}(m)`.
    pub fn cyclic(a: u32, m: u32) -> Self {
        CoredHexagon::new(a, a, a, m)
    }

    /// Checks that the stored placement matches the parities.
    pub fn validate(&self) -> Result<()> {
        let (pa, pb, pc) = (self.a % 2, self.b % 2, self.c % 2);
        match self.placement {
            Placement::Centered if pa == pb && pb == pc => Ok(()),
            Placement::ShiftedTowardB if pb == pc && pa != pb => Ok(()),
            _ => Err(Error::domain(format!(
                "parities of (a,b,c) = ({},{},{}) do not admit placement {:?}; the deviant side must be a",
                self.a, self.b, self.c, self.placement
            ))),
        }
    }

    pub fn is_cyclic(&self) -> bool {
        self.a == self.b && self.b == self.c
    }

    fn n_total(&self) -> i64 {
        (self.a + self.b + self.c + self.m) as i64
    }
}

/// The set of unit triangles of a cored hexagon.
#[derive(Clone, Debug)]
pub struct Region {
    pub hex: CoredHexagon,
    /// Sorted cells.
    pub cells: Vec<Cell>,
    /// Left endpoints `(x, y₀)` of the unit segments on the rightward
    /// extension of the bottom core side, in order of increasing `x`.
    pub reference_ray: Vec<(i64, i64)>,
    /// Lower-left vertex of the core.
    pub core_origin: (i64, i64),
    index: HashMap<Cell, usize>,
}

/// Builds the region for a validated hexagon.
pub fn build_region(h: &CoredHexagon) -> Result<Region> {
    h.validate()?;
    let shift = match h.placement {
        Placement::Centered => 0,
        Placement::ShiftedTowardB => -1,
    };
    Ok(region_with_core_shift(h, shift))
}

/// Builds the region with the core's `x₀` moved by `shift` half-units from
/// `(a+b)/2`. `shift = −1` is the standard placement of the shifted case;
/// `shift = +1` is the mirror-image convention (towards side `c`).
pub fn region_with_core_shift(h: &CoredHexagon, shift: i64) -> Region {
    let (a, b, c, m) = (h.a as i64, h.b as i64, h.c as i64, h.m as i64);
    let n = h.n_total();
    let x0 = (a + b + shift) / 2;
    let y0 = (b + c) / 2;
    let inside = |cell: Cell| {
        let (x, y) = cell.centroid3();
        let hex = x >= 0 && y >= 0 && x + y <= 3 * n && x <= 3 * (n - c) && y <= 3 * (n - a) && x + y >= 3 * b;
        let core = x > 3 * x0 && y > 3 * y0 && x + y < 3 * (x0 + y0 + m);
        hex && !core
    };
    let mut cells = Vec::new();
    for r in 0..n {
        for col in 0..n {
            for cell in [Cell::up(r, col), Cell::down(r, col)] {
                if inside(cell) {
                    cells.push(cell);
                }
            }
        }
    }
    cells.sort();
    let index: HashMap<Cell, usize> = cells.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut reference_ray = Vec::new();
    let mut x = x0 + m;
    while index.contains_key(&Cell::up(y0, x)) {
        reference_ray.push((x, y0));
        x += 1;
    }
    Region { hex: *h, cells, reference_ray, core_origin: (x0, y0), index }
}

impl Region {
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn index_of(&self, cell: &Cell) -> Option<usize> {
        self.index.get(cell).copied()
    }

    pub fn contains(&self, cell: &Cell) -> bool {
        self.index.contains_key(cell)
    }

    pub fn count_orientation(&self, o: Orientation) -> usize {
        self.cells.iter().filter(|c| c.orient == o).count()
    }

    /// Line-based text form: one `U row col` or `D row col` per line.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for c in &self.cells {
            let tag = match c.orient {
                Orientation::Up => 'U',
                Orientation::Down => 'D',
            };
            let _ = writeln!(s, "{tag} {} {}", c.row, c.col);
        }
        s
    }

    /// Rotation by 120° about the center, as a permutation of cell indices.
    fn rotation(&self) -> Result<Vec<usize>> {
        if !self.hex.is_cyclic() {
            return Err(Error::domain("rotation by 120 degrees needs a = b = c"));
        }
        let (x0, y0) = self.core_origin;
        let m = self.hex.m as i64;
        // center scaled by 3
        let (px, py) = (3 * x0 + m, 3 * y0 + m);
        self.cells
            .iter()
            .map(|cell| {
                let (x, y) = cell.centroid3();
                let (dx, dy) = (x - px, y - py);
                let (rx, ry) = (px - dx - dy, py + dx);
                Cell::from_centroid3(rx, ry)
                    .and_then(|c| self.index_of(&c))
                    .ok_or_else(|| Error::domain("region is not invariant under rotation"))
            })
            .collect()
    }
}

/// A perfect matching of a region's cells into lozenges. Each pair is stored
/// as `(down, up)`; pairs are sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tiling {
    pub pairs: Vec<(Cell, Cell)>,
}

impl Tiling {
    fn from_partner(region: &Region, partner: &[u32]) -> Self {
        let mut pairs: Vec<(Cell, Cell)> = region
            .cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.orient == Orientation::Down)
            .map(|(i, &c)| (c, region.cells[partner[i] as usize]))
            .collect();
        pairs.sort();
        Tiling { pairs }
    }

    /// Checks that the pairs form a perfect matching of adjacent cells.
    pub fn validate(&self, region: &Region) -> Result<()> {
        let mut seen = HashSet::new();
        for &(d, u) in &self.pairs {
            if d.orient != Orientation::Down || u.orient != Orientation::Up || !d.neighbours().contains(&u) {
                return Err(Error::domain(format!("{d:?} and {u:?} do not form a lozenge")));
            }
            for cell in [d, u] {
                if !region.contains(&cell) || !seen.insert(cell) {
                    return Err(Error::domain(format!("cell {cell:?} outside region or covered twice")));
                }
            }
        }
        if seen.len() != region.len() {
            return Err(Error::domain("tiling leaves cells uncovered"));
        }
        Ok(())
    }

    fn partner_map(&self) -> HashMap<Cell, Cell> {
        let mut map = HashMap::with_capacity(2 * self.pairs.len());
        for &(d, u) in &self.pairs {
            map.insert(d, u);
            map.insert(u, d);
        }
        map
    }

    fn partner_indices(&self, region: &Region) -> Result<Vec<u32>> {
        self.validate(region)?;
        let mut partner = vec![0u32; region.len()];
        for &(d, u) in &self.pairs {
            let (i, j) = (region.index[&d], region.index[&u]);
            partner[i] = j as u32;
            partner[j] = i as u32;
        }
        Ok(partner)
    }

    /// One `D row col U row col` line per lozenge.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (d, u) in &self.pairs {
            let _ = writeln!(s, "D {} {} U {} {}", d.row, d.col, u.row, u.col);
        }
        s
    }

    /// Parses the output of [`Tiling::to_text`].
    pub fn from_text(text: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let f: Vec<&str> = line.split_whitespace().collect();
            let parse = |s: &str| s.parse::<i64>().map_err(|_| Error::domain(format!("bad tiling line {line:?}")));
            if f.len() != 6 || f[0] != "D" || f[3] != "U" {
                return Err(Error::domain(format!("bad tiling line {line:?}")));
            }
            pairs.push((Cell::down(parse(f[1])?, parse(f[2])?), Cell::up(parse(f[4])?, parse(f[5])?)));
        }
        pairs.sort();
        Ok(Tiling { pairs })
    }
}

/// Statistic values collected per tiling during enumeration.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Stats {
    n: u32,
    n6: u32,
}

/// Backtracking enumerator over perfect matchings of a region, optionally
/// restricted to matchings invariant under the 120° rotation.
struct Enumerator<'r> {
    region: &'r Region,
    adj: Vec<[Option<u32>; 3]>,
    rot: Option<Vec<usize>>,
    partner: Vec<u32>,
}

const FREE: u32 = u32::MAX;

impl<'r> Enumerator<'r> {
    fn new(region: &'r Region, cyclic: bool, cap: usize) -> Result<Self> {
        let effective = if cyclic { region.len() / 3 } else { region.len() };
        if effective > cap {
            return Err(Error::Resource { what: "enumeration cells", size: effective, cap });
        }
        let adj = region
            .cells
            .iter()
            .map(|c| {
                let nb = c.neighbours();
                [0, 1, 2].map(|k| region.index_of(&nb[k]).map(|i| i as u32))
            })
            .collect();
        let rot = if cyclic { Some(region.rotation()?) } else { None };
        Ok(Enumerator { region, adj, rot, partner: vec![FREE; region.len()] })
    }

    fn run(&mut self, visit: &mut dyn FnMut(&[u32])) {
        if self.region.count_orientation(Orientation::Up) != self.region.count_orientation(Orientation::Down) {
            return;
        }
        self.recurse(0, visit);
    }

    fn recurse(&mut self, start: usize, visit: &mut dyn FnMut(&[u32])) {
        let mut i = start;
        while i < self.partner.len() && self.partner[i] != FREE {
            i += 1;
        }
        if i == self.partner.len() {
            visit(&self.partner);
            return;
        }
        for k in 0..3 {
            let Some(j) = self.adj[i][k] else { continue };
            let j = j as usize;
            if self.partner[j] != FREE {
                continue;
            }
            match &self.rot {
                None => {
                    self.partner[i] = j as u32;
                    self.partner[j] = i as u32;
                    self.recurse(i + 1, visit);
                    self.partner[i] = FREE;
                    self.partner[j] = FREE;
                }
                Some(rot) => {
                    let (i1, j1) = (rot[i], rot[j]);
                    let (i2, j2) = (rot[i1], rot[j1]);
                    let orbit = [i, j, i1, j1, i2, j2];
                    let distinct = orbit.iter().collect::<HashSet<_>>().len() == 6;
                    if !distinct || orbit.iter().any(|&x| self.partner[x] != FREE) {
                        continue;
                    }
                    for (p, q) in [(i, j), (i1, j1), (i2, j2)] {
                        self.partner[p] = q as u32;
                        self.partner[q] = p as u32;
                    }
                    self.recurse(i + 1, visit);
                    for x in orbit {
                        self.partner[x] = FREE;
                    }
                }
            }
        }
    }
}

/// `n(T)` on a partner array.
fn stat_n(region: &Region, partner: &[u32]) -> u32 {
    region
        .reference_ray
        .iter()
        .filter(|&&(x, y)| {
            // below the line lies either a down-triangle of the region or,
            // when the core touches the bottom side, the outside
            let up = region.index[&Cell::up(y, x)];
            match region.index.get(&Cell::down(y - 1, x)) {
                Some(&down) => partner[up] as usize != down,
                None => true,
            }
        })
        .count() as u32
}

/// `n₆(T)` on a partner array (cyclic regions only).
fn stat_n6(region: &Region, partner: &[u32]) -> u32 {
    let (x0, y0) = region.core_origin;
    let s = x0 + y0 + region.hex.m as i64;
    let mut total = 0i64;
    for (i, cell) in region.cells.iter().enumerate() {
        if cell.orient != Orientation::Down {
            continue;
        }
        let other = region.cells[partner[i] as usize];
        // horizontal lozenge: Down(r, c) with Up(r, c+1); its vertical
        // diagonal runs from (c+1, r) to (c+1, r+1)
        if other == Cell::up(cell.row, cell.col + 1) {
            let (vx, vy) = (cell.col + 1, cell.row);
            if vx >= x0 && vx + vy >= s {
                total += vx + vy - s;
            }
        }
    }
    total as u32
}

fn enumerate_stats(region: &Region, cyclic: bool, cap: usize, with_n6: bool) -> Result<BTreeMap<Stats, u64>> {
    let mut e = Enumerator::new(region, cyclic, cap)?;
    let mut hist: BTreeMap<Stats, u64> = BTreeMap::new();
    e.run(&mut |p| {
        let st = Stats { n: stat_n(region, p), n6: if with_n6 { stat_n6(region, p) } else { 0 } };
        *hist.entry(st).or_insert(0) += 1;
    });
    Ok(hist)
}

/// Calls `visit` with every tiling of the region (cyclically symmetric ones
/// only when `cyclic`).
pub fn for_each_tiling(region: &Region, cyclic: bool, cap: usize, mut visit: impl FnMut(Tiling)) -> Result<()> {
    let mut e = Enumerator::new(region, cyclic, cap)?;
    e.run(&mut |p| visit(Tiling::from_partner(region, p)));
    Ok(())
}

/// All tilings of the region, collected.
pub fn all_tilings(region: &Region, cyclic: bool, cap: usize) -> Result<Vec<Tiling>> {
    let mut out = Vec::new();
    for_each_tiling(region, cyclic, cap, |t| out.push(t))?;
    Ok(out)
}

/// Tiling weights for [`count_weighted`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Weight {
    /// Plain count of all tilings.
    One,
    /// `Σ (−1)^{n(T)}` over all tilings.
    MinusOneN,
    /// `Σ ω^{n(T)}` over cyclically symmetric tilings, `ω` a primitive third root.
    Omega3N,
    /// `Σ ω^{n(T)}` over cyclically symmetric tilings, `ω` a primitive sixth root.
    Omega6N,
    /// `Σ (−1)^{n₆(T)}` over cyclically symmetric tilings.
    MinusOneN6,
}

/// Weighted count with the cap from [`cell_cap`].
pub fn count_weighted(h: &CoredHexagon, weight: Weight) -> Result<CycloElement> {
    count_weighted_with_cap(h, weight, cell_cap())
}

/// Weighted count by exhaustive enumeration. `One` and `MinusOneN` range
/// over all tilings and return a rational element of the `Third` ring; the
/// other weights range over cyclically symmetric tilings and need `a=b=c`.
pub fn count_weighted_with_cap(h: &CoredHexagon, weight: Weight, cap: usize) -> Result<CycloElement> {
    let region = build_region(h)?;
    match weight {
        Weight::One | Weight::MinusOneN => {
            let hist = enumerate_stats(&region, false, cap, false)?;
            Ok(fold_hist(&hist, |s| {
                let odd = weight == Weight::MinusOneN && s.n % 2 == 1;
                real_sign(odd)
            }))
        }
        Weight::Omega3N | Weight::Omega6N | Weight::MinusOneN6 => {
            if !h.is_cyclic() {
                return Err(Error::domain(format!("weight {weight:?} needs a = b = c")));
            }
            let hist = enumerate_stats(&region, true, cap, weight == Weight::MinusOneN6)?;
            Ok(match weight {
                Weight::Omega3N => fold_hist(&hist, |s| CycloElement::tau(CycloRing::Third).pow(s.n % 3)),
                Weight::Omega6N => fold_hist(&hist, |s| CycloElement::tau(CycloRing::Sixth).pow(s.n % 6)),
                _ => fold_hist(&hist, |s| real_sign(s.n6 % 2 == 1)),
            })
        }
    }
}

/// Cyclic count weighted by `ω^{n(T)}` for `ω ∈ {1, −1}`, i.e. the left
/// sides of the cyclic theorems with a real root of unity.
pub fn count_cyclic_real(h: &CoredHexagon, minus_one: bool, cap: usize) -> Result<BigInt> {
    if !h.is_cyclic() {
        return Err(Error::domain("cyclic counts need a = b = c"));
    }
    let region = build_region(h)?;
    let hist = enumerate_stats(&region, true, cap, false)?;
    let mut total = BigInt::zero();
    for (s, &cnt) in &hist {
        if minus_one && s.n % 2 == 1 {
            total -= cnt;
        } else {
            total += cnt;
        }
    }
    Ok(total)
}

fn real_sign(negative: bool) -> CycloElement {
    let v = if negative { -Rational::one() } else { Rational::one() };
    CycloElement::from_rational(CycloRing::Third, v)
}

/// `Σ count · weight(stat)` over the histogram.
fn fold_hist(hist: &BTreeMap<Stats, u64>, weight: impl Fn(&Stats) -> CycloElement) -> CycloElement {
    let mut total: Option<CycloElement> = None;
    for (s, &cnt) in hist {
        let term = weight(s).scale(&Rational::from_integer(BigInt::from(cnt)));
        total = Some(match total {
            None => term,
            Some(t) => &t + &term,
        });
    }
    total.unwrap_or_else(|| CycloElement::zero(CycloRing::Third))
}

/// The number of lozenge edges on the reference ray.
pub fn statistic_n(t: &Tiling, r: &Region) -> Result<u32> {
    Ok(stat_n(r, &t.partner_indices(r)?))
}

/// `n₆(T)`: sum of distances of horizontal lozenges meeting the top-right
/// fundamental region to its lower border. Requires a cyclically symmetric
/// tiling.
pub fn statistic_n6(t: &Tiling, r: &Region) -> Result<u32> {
    if !is_cyclically_symmetric(t, r)? {
        return Err(Error::domain("n6 is defined for cyclically symmetric tilings only"));
    }
    Ok(stat_n6(r, &t.partner_indices(r)?))
}

/// Whether the tiling is invariant under rotation by 120°.
pub fn is_cyclically_symmetric(t: &Tiling, r: &Region) -> Result<bool> {
    let rot = r.rotation()?;
    let partner = t.partner_indices(r)?;
    Ok((0..partner.len()).all(|i| rot[partner[i] as usize] == partner[rot[i]] as usize))
}

/// The tiling turned by 120° about the center (requires `a=b=c`).
pub fn rotate_tiling(t: &Tiling, r: &Region) -> Result<Tiling> {
    let rot = r.rotation()?;
    let partner = t.partner_indices(r)?;
    let mut rotated = vec![0u32; partner.len()];
    for i in 0..partner.len() {
        rotated[rot[i]] = rot[partner[i] as usize] as u32;
    }
    Ok(Tiling::from_partner(r, &rotated))
}

/// A point in the path coordinates of the determinant formulas.
pub type PathPoint = (i64, i64);

/// The nonintersecting path family of a tiling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathFamily {
    /// Each path as its sequence of lattice points, start first.
    pub paths: Vec<Vec<PathPoint>>,
    /// Start points `A_1, …, A_{a+m}`.
    pub starts: Vec<PathPoint>,
    /// End points `E_1, …, E_{a+m}`.
    pub ends: Vec<PathPoint>,
    /// `sigma[i] = j` when the path from `A_{i+1}` ends at `E_{j+1}`.
    pub sigma: Vec<usize>,
}

impl PathFamily {
    /// Sign of the pairing permutation.
    pub fn sign(&self) -> i32 {
        permutation_sign(&self.sigma)
    }

    /// True when no lattice point is visited by two paths.
    pub fn is_vertex_disjoint(&self) -> bool {
        let mut seen = HashSet::new();
        self.paths.iter().flatten().all(|p| seen.insert(*p))
    }
}

pub(crate) fn permutation_sign(sigma: &[usize]) -> i32 {
    let mut seen = vec![false; sigma.len()];
    let mut sign = 1;
    for s in 0..sigma.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut k = s;
        while !seen[k] {
            seen[k] = true;
            k = sigma[k];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// Lattice start points `(X, Y)` of the paths, top side first.
fn lattice_starts(r: &Region) -> Vec<(i64, i64)> {
    let h = &r.hex;
    let top = h.n_total() - h.a as i64;
    let (x0, y0) = r.core_origin;
    (0..h.a as i64)
        .map(|i| (i, top))
        .chain((0..h.m as i64).map(|k| (x0 + k, y0)))
        .collect()
}

/// Follows the lozenges of `t` from each start point down to the bottom side.
pub fn tiling_to_paths(t: &Tiling, r: &Region) -> Result<PathFamily> {
    let partner = t.partner_map();
    t.validate(r)?;
    let b = r.hex.b as i64;
    let to_path = |(x, y): (i64, i64)| (x, x + y - b);
    let mut paths = Vec::new();
    let mut ends_lattice = Vec::new();
    for (x, y) in lattice_starts(r) {
        let (mut x, mut y) = (x, y);
        let mut path = vec![to_path((x, y))];
        while y > 0 {
            let d = Cell::down(y - 1, x);
            let u = partner
                .get(&d)
                .ok_or_else(|| Error::domain(format!("path leaves the region at {:?}", (x, y))))?;
            if *u == Cell::up(y - 1, x + 1) {
                x += 1;
            } else if *u != Cell::up(y - 1, x) {
                return Err(Error::domain(format!("path blocked at {:?}", (x, y))));
            }
            y -= 1;
            path.push(to_path((x, y)));
        }
        ends_lattice.push(x);
        paths.push(path);
    }
    let starts: Vec<PathPoint> = lattice_starts(r).into_iter().map(to_path).collect();
    let k = r.hex.a as i64 + r.hex.m as i64;
    let ends: Vec<PathPoint> = (1..=k).map(|j| (b + j - 1, j - 1)).collect();
    let sigma = ends_lattice
        .iter()
        .map(|&x| {
            let j = x - b;
            if j < 0 || j >= k {
                Err(Error::domain(format!("path ends outside the bottom side at x = {x}")))
            } else {
                Ok(j as usize)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PathFamily { paths, starts, ends, sigma })
}

/// Rebuilds the tiling of `r` whose path family is `family`: path steps give
/// the crossed lozenges, and every remaining down-triangle pairs with the
/// up-triangle directly above it.
pub fn paths_to_tiling(family: &PathFamily, r: &Region) -> Result<Tiling> {
    let b = r.hex.b as i64;
    let mut pairs = Vec::new();
    let mut used = HashSet::new();
    for path in &family.paths {
        for w in path.windows(2) {
            let (x, y) = (w[0].0, w[0].1 - w[0].0 + b);
            let d = Cell::down(y - 1, x);
            let u = if w[1].0 == w[0].0 + 1 { Cell::up(y - 1, x + 1) } else { Cell::up(y - 1, x) };
            used.insert(d);
            used.insert(u);
            pairs.push((d, u));
        }
    }
    for &cell in &r.cells {
        if cell.orient == Orientation::Down && !used.contains(&cell) {
            pairs.push((cell, Cell::up(cell.row + 1, cell.col)));
        }
    }
    pairs.sort();
    let t = Tiling { pairs };
    t.validate(r)?;
    Ok(t)
}

/// Builds a tiling from path step words: one word per path, in the order of
/// the start points, with `'H'` for a horizontal and `'V'` for a vertical
/// path step.
pub fn tiling_from_step_words(r: &Region, words: &[&str]) -> Result<Tiling> {
    let b = r.hex.b as i64;
    let starts = lattice_starts(r);
    if starts.len() != words.len() {
        return Err(Error::domain(format!("expected {} step words, got {}", starts.len(), words.len())));
    }
    let mut paths = Vec::new();
    for (&(x, y), word) in starts.iter().zip(words) {
        let (mut px, mut py) = (x, x + y - b);
        let mut path = vec![(px, py)];
        for ch in word.chars() {
            match ch {
                'H' => px += 1,
                'V' => py -= 1,
                _ => return Err(Error::domain(format!("bad step {ch:?}"))),
            }
            path.push((px, py));
        }
        paths.push(path);
    }
    let family = PathFamily { paths, starts: vec![], ends: vec![], sigma: vec![] };
    paths_to_tiling(&family, r)
}

/// The plane partition of a tiling of the uncored hexagon: a `c × b` array
/// of column heights bounded by `a`, weakly decreasing along rows and columns.
///
/// Cubes are stacked into the corner at which the reference ray starts, so
/// the tiling without horizontal lozenges on the ray is the empty partition,
/// and for `a = b = c` the statistic `n(T)` equals `m₁(π_T)`.
pub fn tiling_to_plane_partition(t: &Tiling, r: &Region) -> Result<Vec<Vec<u32>>> {
    if r.hex.m != 0 {
        return Err(Error::domain("plane partitions correspond to tilings with m = 0"));
    }
    let fam = tiling_to_paths(t, r)?;
    let (b, c) = (r.hex.b as usize, r.hex.c as usize);
    let mut pp = vec![vec![0u32; b]; c];
    for path in &fam.paths {
        // λ_k = number of horizontal steps after the k-th vertical step
        let mut horizontal_after = Vec::with_capacity(c);
        let total_h = path.windows(2).filter(|w| w[1].0 > w[0].0).count();
        let mut h_seen = 0;
        for w in path.windows(2) {
            if w[1].0 > w[0].0 {
                h_seen += 1;
            } else {
                horizontal_after.push(total_h - h_seen);
            }
        }
        for (k, &lam) in horizontal_after.iter().enumerate() {
            for cell in pp[k].iter_mut().take(lam) {
                *cell += 1;
            }
        }
    }
    let a = r.hex.a;
    Ok((0..c).map(|i| (0..b).map(|j| a - pp[c - 1 - i][b - 1 - j]).collect()).collect())
}

/// `m₁(π)`: the number of cubes `(i,i,i)` of a plane partition.
pub fn m1(pp: &[Vec<u32>]) -> u32 {
    (0..pp.len().min(pp.first().map_or(0, |r| r.len())))
        .filter(|&i| pp[i][i] as usize > i)
        .count() as u32
}

/// `m₆(π)`: the number of orbits `{(i,j,k), (j,k,i), (k,i,j)}` of cubes of
/// `π` whose coordinates are not all equal. Meaningful for cyclically
/// symmetric `π`, where every such orbit lies inside `π`.
pub fn m6(pp: &[Vec<u32>]) -> u32 {
    let mut orbits = 0;
    for (i, row) in pp.iter().enumerate() {
        for (j, &height) in row.iter().enumerate() {
            for k in 0..height as usize {
                let all_equal = i == j && j == k;
                // count each orbit once, at its lexicographically least member
                if !all_equal && (i, j, k) <= (j, k, i) && (i, j, k) <= (k, i, j) {
                    orbits += 1;
                }
            }
        }
    }
    orbits
}

/// Total number of cubes of a plane partition.
pub fn volume(pp: &[Vec<u32>]) -> u64 {
    pp.iter().flatten().map(|&v| v as u64).sum()
}

/// Number of cells (unit triangles) the region would have, computed from
/// the side lengths: `N² − a² − b² − c² − m²` with `N = a+b+c+m`.
pub fn expected_cell_count(h: &CoredHexagon) -> usize {
    let n = h.n_total();
    let (a, b, c, m) = (h.a as i64, h.b as i64, h.c as i64, h.m as i64);
    (n * n - a * a - b * b - c * c - m * m) as usize
}

/// Plain count as a big integer (weight `One`).
pub fn count_tilings(h: &CoredHexagon, cap: usize) -> Result<BigInt> {
    let v = count_weighted_with_cap(h, Weight::One, cap)?;
    Ok(v.c0.to_integer())
}

/// Signed count `Σ (−1)^{n(T)}` as a big integer.
pub fn count_signed(h: &CoredHexagon, cap: usize) -> Result<BigInt> {
    let v = count_weighted_with_cap(h, Weight::MinusOneN, cap)?;
    Ok(v.c0.to_integer())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn region(a: u32, b: u32, c: u32, m: u32) -> Region {
        build_region(&CoredHexagon::new(a, b, c, m)).unwrap()
    }

    #[test]
    fn cell_counts_match_side_lengths() {
        for (a, b, c, m) in [(3, 5, 1, 2), (2, 5, 1, 2), (1, 1, 1, 0), (2, 0, 0, 3), (4, 2, 2, 1)] {
            let h = CoredHexagon::new(a, b, c, m);
            let r = build_region(&h).unwrap();
            assert_eq!(r.len(), expected_cell_count(&h), "{h:?}");
            assert_eq!(r.count_orientation(Orientation::Up), r.count_orientation(Orientation::Down));
        }
    }

    #[test]
    fn empty_region_when_only_core() {
        assert!(region(0, 0, 0, 4).is_empty());
        assert_eq!(count_tilings(&CoredHexagon::new(0, 0, 0, 4), 120).unwrap(), BigInt::one());
    }

    #[test]
    fn unit_hexagon_has_two_tilings() {
        assert_eq!(count_tilings(&CoredHexagon::new(1, 1, 1, 0), 120).unwrap(), BigInt::from(2));
    }

    #[test]
    fn relabeling_puts_deviant_side_first() {
        let h = CoredHexagon::new(3, 2, 1, 0);
        assert_eq!((h.a, h.b, h.c), (2, 1, 3));
        assert_eq!(h.relabeling, Relabeling::RotateToB);
        let h = CoredHexagon::new(1, 1, 2, 0);
        assert_eq!((h.a, h.b, h.c), (2, 1, 1));
        assert_eq!(h.relabeling, Relabeling::RotateToC);
        let bad = CoredHexagon { a: 1, b: 2, c: 2, m: 0, placement: Placement::Centered, relabeling: Relabeling::Identity };
        assert!(build_region(&bad).is_err());
    }

    #[test]
    fn ray_statistic_is_the_diagonal_count() {
        for a in 0..=3 {
            let r = region(a, a, a, 0);
            for t in all_tilings(&r, false, DEFAULT_CELL_CAP).unwrap() {
                let pp = tiling_to_plane_partition(&t, &r).unwrap();
                for (i, row) in pp.iter().enumerate() {
                    for (j, &h) in row.iter().enumerate() {
                        assert!(h <= a);
                        assert!(i == 0 || h <= pp[i - 1][j]);
                        assert!(j == 0 || h <= row[j - 1]);
                    }
                }
                assert_eq!(statistic_n(&t, &r).unwrap(), m1(&pp), "a={a}");
            }
        }
    }

    #[test]
    fn n6_is_the_off_diagonal_orbit_count() {
        for a in 0..=3 {
            let r = region(a, a, a, 0);
            for t in all_tilings(&r, true, DEFAULT_CELL_CAP).unwrap() {
                let pp = tiling_to_plane_partition(&t, &r).unwrap();
                let off_diagonal = volume(&pp) - m1(&pp) as u64;
                assert_eq!(off_diagonal % 3, 0);
                assert_eq!(m6(&pp) as u64, off_diagonal / 3);
                assert_eq!(statistic_n6(&t, &r).unwrap(), m6(&pp), "a={a}");
            }
        }
    }

    #[test]
    fn plane_partition_volumes_cover_the_box() {
        let r = region(2, 3, 1, 0);
        let mut volumes: Vec<u64> = all_tilings(&r, false, DEFAULT_CELL_CAP)
            .unwrap()
            .iter()
            .map(|t| volume(&tiling_to_plane_partition(t, &r).unwrap()))
            .collect();
        volumes.sort();
        assert_eq!(volumes.first(), Some(&0));
        assert_eq!(volumes.last(), Some(&6));
        assert_eq!(volumes.len(), 10);
    }

    #[test]
    fn cap_is_a_resource_error() {
        let h = CoredHexagon::new(3, 3, 3, 0);
        assert!(matches!(count_weighted_with_cap(&h, Weight::One, 10), Err(Error::Resource { .. })));
    }

    #[test]
    fn text_round_trip() {
        let r = region(2, 2, 2, 1);
        let ts = all_tilings(&r, false, 120).unwrap();
        for t in ts.iter().take(5) {
            assert_eq!(Tiling::from_text(&t.to_text()).unwrap(), *t);
        }
        assert_eq!(r.to_text().lines().count(), r.len());
    }
}
