//! Pipe dreams (RC-graphs): cross sets in the positive quadrant, pipe
//! tracing, enumeration of `PD(w)`, the slide and swap moves on marked pipe
//! dreams, and the positions dominated by a dominant permutation.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::sync::{Arc, Mutex};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{check_dominant_above, Partition, Permutation, Pos};

/// Labels of the pipes leaving one tile through each of its four edges.
///
/// Cross tiles satisfy `w == e` and `s == n`; bump tiles satisfy `w == n`
/// and `s == e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TileLabels {
    pub n: usize,
    pub e: usize,
    pub s: usize,
    pub w: usize,
}

/// Pipe labels for every tile of the box `[1, size]^2`.
///
/// The north edge of tile `(1, j)` carries pipe `j` and the east edge of
/// tile `(i, size)` carries pipe `size + i`, the labels forced by the
/// all-bump region outside the box. The truncation is exact for every tile
/// inside the box.
#[derive(Clone, Debug)]
pub struct Trace {
    size: usize,
    tiles: Vec<TileLabels>,
    cross: Vec<bool>,
    reduced: bool,
}

impl Trace {
    fn compute(crosses: &[Pos], size: usize) -> Trace {
        let mut cross = vec![false; size * size];
        for p in crosses {
            debug_assert!(p.i <= size && p.j <= size, "{p} outside box {size}");
            cross[(p.i - 1) * size + (p.j - 1)] = true;
        }
        let blank = TileLabels {
            n: 0,
            e: 0,
            s: 0,
            w: 0,
        };
        let mut tiles = vec![blank; size * size];
        let mut pairs = HashSet::new();
        let mut reduced = true;
        for i in 1..=size {
            for j in (1..=size).rev() {
                let idx = (i - 1) * size + (j - 1);
                let n = if i == 1 { j } else { tiles[idx - size].s };
                let e = if j == size { size + i } else { tiles[idx + 1].w };
                tiles[idx] = if cross[idx] {
                    if !pairs.insert((n.min(e), n.max(e))) {
                        reduced = false;
                    }
                    TileLabels { n, e, s: n, w: e }
                } else {
                    TileLabels { n, e, s: e, w: n }
                };
            }
        }
        Trace {
            size,
            tiles,
            cross,
            reduced,
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    fn index(&self, p: Pos) -> Option<usize> {
        (p.i >= 1 && p.j >= 1 && p.i <= self.size && p.j <= self.size)
            .then(|| (p.i - 1) * self.size + (p.j - 1))
    }

    pub fn labels(&self, p: Pos) -> Option<TileLabels> {
        self.index(p).map(|idx| self.tiles[idx])
    }

    pub fn is_cross(&self, p: Pos) -> bool {
        self.index(p).is_some_and(|idx| self.cross[idx])
    }

    /// Whether no two pipes cross twice inside the box.
    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    /// West-edge labels of column 1, top to bottom.
    pub fn west_labels(&self) -> Vec<usize> {
        (1..=self.size)
            .map(|i| self.tiles[(i - 1) * self.size].w)
            .collect()
    }

    /// Column of the tile where pipe `k` enters `row` from the north.
    pub fn entry_column(&self, k: usize, row: usize) -> Option<usize> {
        (1..=self.size).find(|&j| self.tiles[(row - 1) * self.size + (j - 1)].n == k)
    }

    /// Every tile that pipe `k` touches, in row-major order.
    pub fn pipe_tiles(&self, k: usize) -> Vec<Pos> {
        (1..=self.size)
            .cartesian_product(1..=self.size)
            .map(Pos::from)
            .filter(|&p| {
                let t = self.tiles[(p.i - 1) * self.size + (p.j - 1)];
                t.n == k || t.e == k || t.s == k || t.w == k
            })
            .collect()
    }

    /// `p` lies weakly northwest of pipe `k`: some tile of pipe `k` has row
    /// at least `p.i` and column at least `p.j`.
    ///
    /// Pipe `k` must lie inside the box.
    pub fn is_weakly_northwest_of(&self, p: Pos, k: usize) -> bool {
        let by_path = self
            .pipe_tiles(k)
            .iter()
            .any(|t| t.i >= p.i && t.j >= p.j);
        debug_assert_eq!(
            by_path,
            p.i <= self.size && self.entry_column(k, p.i).is_some_and(|c| p.j <= c),
            "northwest characterizations disagree at {p} for pipe {k}"
        );
        by_path
    }

    /// The cross tile where pipes `a` and `b` meet, if any.
    pub fn crossing_of(&self, a: usize, b: usize) -> Option<Pos> {
        let pair = (a.min(b), a.max(b));
        (1..=self.size)
            .cartesian_product(1..=self.size)
            .map(Pos::from)
            .find(|&p| {
                let idx = (p.i - 1) * self.size + (p.j - 1);
                let t = self.tiles[idx];
                self.cross[idx] && (t.n.min(t.e), t.n.max(t.e)) == pair
            })
    }
}

/// A reduced pipe dream, stored as its sorted set of cross positions.
pub struct PipeDream {
    crosses: Vec<Pos>,
    permutation: Permutation,
    // Largest trace computed so far; valid for every smaller box.
    memo: Mutex<Option<Arc<Trace>>>,
}

impl PipeDream {
    /// Builds a pipe dream from its crosses, rejecting non-reduced sets.
    pub fn new(crosses: impl IntoIterator<Item = Pos>) -> Result<Self> {
        let crosses = normalize(crosses)?;
        let size = default_box(&crosses);
        let trace = Trace::compute(&crosses, size);
        if !trace.is_reduced() {
            return Err(Error::NotReduced);
        }
        let permutation = Permutation::from_one_line(trace.west_labels())
            .map_err(|e| Error::Invariant(format!("west labels: {e}")))?;
        debug_assert_eq!(crosses.len(), permutation.length());
        Ok(PipeDream {
            crosses,
            permutation,
            memo: Mutex::new(Some(Arc::new(trace))),
        })
    }

    /// The unique pipe dream of a dominant permutation, or the bottom pipe
    /// dream in general: row `i` holds crosses in columns `1..=c_i`.
    pub fn bottom(w: &Permutation) -> Self {
        let crosses = w
            .code()
            .iter()
            .enumerate()
            .flat_map(|(idx, &c)| (1..=c).map(move |j| Pos::new(idx + 1, j)))
            .collect::<Vec<_>>();
        PipeDream::new(crosses).expect("bottom pipe dream is reduced")
    }

    pub fn crosses(&self) -> &[Pos] {
        &self.crosses
    }

    pub fn is_cross(&self, p: Pos) -> bool {
        self.crosses.binary_search(&p).is_ok()
    }

    pub fn permutation(&self) -> &Permutation {
        &self.permutation
    }

    /// `max(i + j) - 1` over the crosses, zero when there are none: the
    /// smallest `n` with every cross inside the staircase `delta_{n+1}`.
    pub fn bounding_window(&self) -> usize {
        self.crosses.iter().map(|p| p.i + p.j - 1).max().unwrap_or(0)
    }

    /// A trace whose box is at least `min_size`, shared through the memo.
    pub fn trace_at_least(&self, min_size: usize) -> Arc<Trace> {
        let size = min_size.max(default_box(&self.crosses));
        let mut memo = self.memo.lock().expect("trace memo poisoned");
        if let Some(t) = memo.as_ref().filter(|t| t.size() >= size) {
            return Arc::clone(t);
        }
        let t = Arc::new(Trace::compute(&self.crosses, size));
        *memo = Some(Arc::clone(&t));
        t
    }

    /// The trace over exactly `[1, size]^2`.
    pub fn trace(&self, size: usize) -> Result<Trace> {
        let required = self.bounding_window() + 1;
        if size < required {
            return Err(Error::BoxTooSmall {
                requested: size,
                required,
            });
        }
        Ok(Trace::compute(&self.crosses, size))
    }

    /// Labels at `p`, tracing a box large enough to contain it.
    pub fn labels(&self, p: Pos) -> TileLabels {
        self.trace_at_least(p.i.max(p.j))
            .labels(p)
            .expect("box contains the position")
    }

    /// The pipe dream with `p` toggled from bump to cross or back, if the
    /// result is reduced.
    pub fn toggled(&self, p: Pos) -> Result<PipeDream> {
        let mut crosses = self.crosses.clone();
        match crosses.binary_search(&p) {
            Ok(idx) => {
                crosses.remove(idx);
            }
            Err(idx) => crosses.insert(idx, p),
        }
        PipeDream::new(crosses)
    }
}

fn normalize(crosses: impl IntoIterator<Item = Pos>) -> Result<Vec<Pos>> {
    let mut crosses: Vec<Pos> = crosses.into_iter().collect();
    if let Some(&bad) = crosses.iter().find(|p| p.i == 0 || p.j == 0) {
        return Err(Error::InvalidPosition(bad));
    }
    crosses.sort();
    crosses.dedup();
    Ok(crosses)
}

fn default_box(crosses: &[Pos]) -> usize {
    crosses.iter().map(|p| p.i + p.j).max().unwrap_or(0).max(1)
}

impl Clone for PipeDream {
    fn clone(&self) -> Self {
        let memo = self.memo.lock().expect("trace memo poisoned").clone();
        PipeDream {
            crosses: self.crosses.clone(),
            permutation: self.permutation.clone(),
            memo: Mutex::new(memo),
        }
    }
}

impl PartialEq for PipeDream {
    fn eq(&self, other: &Self) -> bool {
        self.crosses == other.crosses
    }
}

impl Eq for PipeDream {}

impl std::hash::Hash for PipeDream {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.crosses.hash(state);
    }
}

impl PartialOrd for PipeDream {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PipeDream {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.crosses.cmp(&other.crosses)
    }
}

impl fmt::Debug for PipeDream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PipeDream")
            .field("crosses", &self.crosses)
            .field("permutation", &self.permutation.to_string())
            .finish()
    }
}

impl fmt::Display for PipeDream {
    /// The cross set, as `{(1,1),(2,3)}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.crosses.iter().join(","))
    }
}

#[derive(Serialize, Deserialize)]
struct PipeDreamRepr {
    crosses: Vec<(usize, usize)>,
}

impl Serialize for PipeDream {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PipeDreamRepr {
            crosses: self.crosses.iter().map(|p| (p.i, p.j)).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PipeDream {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = PipeDreamRepr::deserialize(deserializer)?;
        PipeDream::new(repr.crosses.into_iter().map(Pos::from)).map_err(serde::de::Error::custom)
    }
}

/// The permutation read off an arbitrary finite cross set, and whether the
/// set is reduced.
pub fn permutation_of(crosses: impl IntoIterator<Item = Pos>) -> Result<(Permutation, bool)> {
    let crosses = normalize(crosses)?;
    let trace = Trace::compute(&crosses, default_box(&crosses));
    let perm = Permutation::from_one_line(trace.west_labels())
        .map_err(|e| Error::Invariant(format!("west labels: {e}")))?;
    let reduced = trace.is_reduced();
    debug_assert_eq!(reduced, crosses.len() == perm.length());
    Ok((perm, reduced))
}

/// `PD(w)`, generated as the closure of the bottom pipe dream under ladder
/// moves, sorted by cross set.
pub fn enumerate(w: &Permutation) -> Vec<PipeDream> {
    let start: BTreeSet<Pos> = PipeDream::bottom(w).crosses.iter().copied().collect();
    let mut seen: HashSet<Vec<Pos>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.iter().copied().collect());
    queue.push_back(start);
    while let Some(current) = queue.pop_front() {
        for next in ladder_moves(&current) {
            let key: Vec<Pos> = next.iter().copied().collect();
            if seen.insert(key) {
                queue.push_back(next);
            }
        }
    }
    let mut out: Vec<PipeDream> = seen
        .into_iter()
        .map(|crosses| PipeDream::new(crosses).expect("ladder moves preserve reducedness"))
        .collect();
    out.sort();
    debug_assert!(out.iter().all(|pd| pd.permutation() == w));
    out
}

/// All results of a single ladder move. A cross at `(r, c)` with a bump at
/// `(r, c+1)` climbs to `(t, c+1)` when rows `t+1..r` hold crosses in both
/// columns `c, c+1` and row `t` holds bumps in both.
fn ladder_moves(crosses: &BTreeSet<Pos>) -> Vec<BTreeSet<Pos>> {
    let mut out = Vec::new();
    for &p in crosses {
        if crosses.contains(&Pos::new(p.i, p.j + 1)) {
            continue;
        }
        let mut top = p.i - 1;
        while top >= 1
            && crosses.contains(&Pos::new(top, p.j))
            && crosses.contains(&Pos::new(top, p.j + 1))
        {
            top -= 1;
        }
        if top >= 1
            && !crosses.contains(&Pos::new(top, p.j))
            && !crosses.contains(&Pos::new(top, p.j + 1))
        {
            let mut next = crosses.clone();
            next.remove(&p);
            next.insert(Pos::new(top, p.j + 1));
            out.push(next);
        }
    }
    out
}

pub const BRUTEFORCE_WINDOW_LIMIT: usize = 7;

/// `PD(w)` by filtering every `l(w)`-subset of the staircase `delta_n`.
pub fn enumerate_bruteforce(w: &Permutation) -> Result<Vec<PipeDream>> {
    let n = w.n();
    if n > BRUTEFORCE_WINDOW_LIMIT {
        return Err(Error::WindowTooLarge {
            window: n,
            limit: BRUTEFORCE_WINDOW_LIMIT,
        });
    }
    let staircase: Vec<Pos> = (1..n)
        .flat_map(|i| (1..=n - i).map(move |j| Pos::new(i, j)))
        .collect();
    let mut out = Vec::new();
    for subset in staircase.into_iter().combinations(w.length()) {
        let (perm, reduced) = permutation_of(subset.iter().copied())?;
        if reduced && &perm == w {
            out.push(PipeDream::new(subset)?);
        }
    }
    out.sort();
    Ok(out)
}

/// The positions of a pipe dream dominated by a dominant permutation `pi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominatedSet {
    pub positions: BTreeSet<Pos>,
    pub pi: Permutation,
    pub w: Permutation,
}

impl DominatedSet {
    pub fn contains(&self, p: Pos) -> bool {
        self.positions.contains(&p)
    }

    /// Number of dominated positions in each row `1..=rows`.
    pub fn row_counts(&self, rows: usize) -> Vec<usize> {
        (1..=rows)
            .map(|i| self.positions.iter().filter(|p| p.i == i).count())
            .collect()
    }
}

/// Row cutoffs `lambda'_{pi w^{-1}(k)}` for a fixed `w <=_L pi`.
#[derive(Clone, Debug)]
pub(crate) struct Cutoffs {
    pub pi: Permutation,
    pub w_inv: Permutation,
    pub lambda: Partition,
    pub conjugate: Partition,
}

impl Cutoffs {
    pub fn new(w: &Permutation, pi: &Permutation) -> Result<Self> {
        check_dominant_above(w, pi)?;
        let lambda = Partition::new(pi.code()).expect("dominant code is a partition");
        Ok(Cutoffs {
            pi: pi.clone(),
            w_inv: w.inverse(),
            conjugate: lambda.conjugate(),
            lambda,
        })
    }

    /// `pi w^{-1}(k)`.
    pub fn pi_w_inv(&self, k: usize) -> usize {
        self.pi.apply(self.w_inv.apply(k))
    }

    /// `lambda'_{pi w^{-1}(k)}`.
    pub fn row_cutoff(&self, k: usize) -> usize {
        self.conjugate.part(self.pi_w_inv(k))
    }
}

/// `P(pi)`: positions `p` with `i_p <= lambda'_{pi w^{-1}(s_p)}`.
pub fn dominated_positions(pd: &PipeDream, pi: &Permutation) -> Result<DominatedSet> {
    let w = pd.permutation();
    let cut = Cutoffs::new(w, pi)?;
    let size = w.n().max(pi.n()) + 1;
    let trace = pd.trace_at_least(size);
    let mut positions = BTreeSet::new();
    for i in 1..=cut.lambda.len() {
        for j in 1..=trace.size() {
            let s = trace.labels(Pos::new(i, j)).expect("inside box").s;
            if i <= cut.row_cutoff(s) {
                positions.insert(Pos::new(i, j));
            }
        }
    }
    let set = DominatedSet {
        positions,
        pi: pi.clone(),
        w: w.clone(),
    };
    debug_assert_eq!(
        set.row_counts(cut.lambda.len()),
        cut.lambda.parts(),
        "(D.1) fails"
    );
    debug_assert!(pd.crosses().iter().all(|&p| set.contains(p)), "(D.2) fails");
    Ok(set)
}

/// A pipe dream with a distinguished bump.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "MarkedRepr", into = "MarkedRepr")]
pub struct MarkedPipeDream {
    pub pd: PipeDream,
    pub mark: Pos,
}

#[derive(Serialize, Deserialize)]
struct MarkedRepr {
    crosses: Vec<(usize, usize)>,
    mark: (usize, usize),
}

impl TryFrom<MarkedRepr> for MarkedPipeDream {
    type Error = Error;

    fn try_from(repr: MarkedRepr) -> Result<Self> {
        let pd = PipeDream::new(repr.crosses.into_iter().map(Pos::from))?;
        let (i, j) = repr.mark;
        if i == 0 || j == 0 {
            return Err(Error::InvalidPosition(Pos::new(i, j)));
        }
        MarkedPipeDream::new(pd, Pos::new(i, j))
    }
}

impl From<MarkedPipeDream> for MarkedRepr {
    fn from(m: MarkedPipeDream) -> Self {
        MarkedRepr {
            crosses: m.pd.crosses.iter().map(|p| (p.i, p.j)).collect(),
            mark: (m.mark.i, m.mark.j),
        }
    }
}

impl MarkedPipeDream {
    pub fn new(pd: PipeDream, mark: Pos) -> Result<Self> {
        if pd.is_cross(mark) {
            return Err(Error::MarkOnCross(mark));
        }
        Ok(MarkedPipeDream { pd, mark })
    }

    pub fn permutation(&self) -> &Permutation {
        self.pd.permutation()
    }

    pub fn labels(&self) -> TileLabels {
        self.pd.labels(self.mark)
    }

    /// `w^{-1}(w_p) > i_p`.
    pub fn is_slidable(&self) -> bool {
        let west = self.labels().w;
        let exit_row = self.permutation().position_of(west);
        debug_assert!(exit_row >= self.mark.i, "pipe {west} exits above row {}", self.mark.i);
        exit_row > self.mark.i
    }

    /// Moves the mark west to the first bump, where the west pipe turns
    /// south.
    pub fn slide(&self) -> Result<MarkedPipeDream> {
        if !self.is_slidable() {
            return Err(Error::NotSlidable(self.mark));
        }
        let west = self.labels().w;
        let row = self.mark.i;
        let q = (1..self.mark.j)
            .rev()
            .map(|j| Pos::new(row, j))
            .find(|&q| !self.pd.is_cross(q))
            .ok_or_else(|| Error::Invariant(format!("no bump west of {}", self.mark)))?;
        if self.pd.labels(q).s != west {
            return Err(Error::Invariant(format!(
                "pipe {west} does not turn south at {q}"
            )));
        }
        Ok(MarkedPipeDream {
            pd: self.pd.clone(),
            mark: q,
        })
    }

    /// Pipes `w_p` and `s_p` cross somewhere.
    pub fn is_swappable(&self) -> bool {
        let t = self.labels();
        let w = self.permutation();
        let crossing = self.pd.trace_at_least(0).crossing_of(t.w, t.s);
        debug_assert_eq!(
            crossing.is_some(),
            (t.w > t.s) != (w.position_of(t.w) > w.position_of(t.s)),
            "swappability characterizations disagree at {}",
            self.mark
        );
        crossing.is_some()
    }

    /// Exchanges the marked bump with the cross where pipes `w_p` and `s_p`
    /// meet; the mark moves to that cross's old position.
    pub fn swap(&self) -> Result<MarkedPipeDream> {
        let t = self.labels();
        let q = self
            .pd
            .trace_at_least(0)
            .crossing_of(t.w, t.s)
            .ok_or(Error::NotSwappable(self.mark))?;
        let crosses = self
            .pd
            .crosses
            .iter()
            .copied()
            .filter(|&c| c != q)
            .chain(std::iter::once(self.mark));
        let pd = PipeDream::new(crosses)?;
        if pd.permutation() != self.permutation() {
            return Err(Error::Invariant(format!(
                "swap at {} changed the permutation",
                self.mark
            )));
        }
        Ok(MarkedPipeDream { pd, mark: q })
    }
}

/// ASCII picture: `+` cross, `.` bump, `o` bump dominated by `pi`, `*` the
/// mark. The box covers the staircase of the crosses plus any dominated
/// positions and the mark.
pub fn render_ascii(pd: &PipeDream, pi: Option<&Permutation>, mark: Option<Pos>) -> Result<String> {
    if let Some(m) = mark {
        if pd.is_cross(m) {
            return Err(Error::MarkOnCross(m));
        }
    }
    let dominated = pi.map(|pi| dominated_positions(pd, pi)).transpose()?;
    let mut size = pd.bounding_window() + 1;
    if let Some(m) = mark {
        size = size.max(m.i).max(m.j);
    }
    if let Some(d) = &dominated {
        size = d.positions.iter().fold(size, |acc, p| acc.max(p.i).max(p.j));
    }
    let rows: Vec<String> = (1..=size)
        .map(|i| {
            (1..=size)
                .map(|j| {
                    let p = Pos::new(i, j);
                    if pd.is_cross(p) {
                        '+'
                    } else if mark == Some(p) {
                        '*'
                    } else if dominated.as_ref().is_some_and(|d| d.contains(p)) {
                        'o'
                    } else {
                        '.'
                    }
                })
                .collect()
        })
        .collect();
    Ok(rows.join("\n"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn digits(s: &str) -> Permutation {
        Permutation::from_one_line(s.bytes().map(|b| (b - b'0') as usize).collect()).unwrap()
    }

    fn cells(list: &[(usize, usize)]) -> Vec<Pos> {
        list.iter().copied().map(Pos::from).collect()
    }

    fn pd(list: &[(usize, usize)]) -> PipeDream {
        PipeDream::new(cells(list)).unwrap()
    }

    #[test]
    fn trace_reads_permutations() {
        let empty = pd(&[]);
        assert_eq!(empty.trace(3).unwrap().west_labels(), vec![1, 2, 3]);

        let p31524 = pd(&[(1, 1), (1, 2), (1, 4), (3, 1)]);
        let t = p31524.trace(6).unwrap();
        assert_eq!(&t.west_labels()[..5], &[3, 1, 5, 2, 4]);
        assert_eq!(p31524.permutation(), &digits("31524"));

        let tall = pd(&[(1, 1), (1, 5), (2, 5), (3, 2), (4, 2), (5, 2)]);
        assert_eq!(tall.permutation(), &digits("2136754"));
        assert!(matches!(tall.trace(5), Err(Error::BoxTooSmall { .. })));
    }

    #[test]
    fn tile_connectivity() {
        let p = pd(&[(1, 1), (1, 2), (1, 4), (3, 1)]);
        let t = p.trace(7).unwrap();
        for i in 1..=7 {
            for j in 1..=7 {
                let q = Pos::new(i, j);
                let l = t.labels(q).unwrap();
                if p.is_cross(q) {
                    assert_eq!((l.w, l.s), (l.e, l.n));
                } else {
                    assert_eq!((l.w, l.s), (l.n, l.e));
                }
            }
        }
    }

    #[test]
    fn pipe_dream_of_15342() {
        assert_eq!(
            pd(&[(1, 2), (2, 1), (2, 2), (2, 3), (3, 2)]).permutation(),
            &digits("15342")
        );
    }

    #[test]
    fn non_reduced_detection() {
        let (_, reduced) = permutation_of(cells(&[(1, 1), (1, 3), (3, 1), (3, 2), (4, 1)])).unwrap();
        assert!(!reduced);
        assert_eq!(
            PipeDream::new(cells(&[(1, 1), (1, 3), (3, 1), (3, 2), (4, 1)])).unwrap_err(),
            Error::NotReduced
        );
        let (perm, reduced) = permutation_of(cells(&[(2, 1), (2, 2), (3, 1)])).unwrap();
        assert!(reduced);
        assert_eq!(perm, digits("1432"));
        let (perm, reduced) = permutation_of(Vec::new()).unwrap();
        assert!(reduced && perm.is_identity());
    }

    fn sets_1432() -> Vec<Vec<Pos>> {
        let mut v = vec![
            cells(&[(2, 1), (2, 2), (3, 1)]),
            cells(&[(1, 3), (2, 1), (3, 1)]),
            cells(&[(1, 2), (2, 1), (2, 2)]),
            cells(&[(1, 2), (1, 3), (3, 1)]),
            cells(&[(1, 2), (1, 3), (2, 2)]),
        ];
        v.sort();
        v
    }

    #[test]
    fn enumerate_1432() {
        let got: Vec<Vec<Pos>> = enumerate(&digits("1432"))
            .iter()
            .map(|p| p.crosses().to_vec())
            .collect();
        assert_eq!(got, sets_1432());
        let brute: Vec<Vec<Pos>> = enumerate_bruteforce(&digits("1432"))
            .unwrap()
            .iter()
            .map(|p| p.crosses().to_vec())
            .collect();
        assert_eq!(brute, sets_1432());
    }

    #[test]
    fn enumerate_identity_and_dominant() {
        assert_eq!(enumerate(&Permutation::identity()), vec![pd(&[])]);
        assert_eq!(enumerate_bruteforce(&Permutation::identity()).unwrap(), vec![pd(&[])]);
        let pi = digits("6573421");
        let all = enumerate(&pi);
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].crosses(), &pi.diagram()[..]);
        assert!(matches!(
            enumerate_bruteforce(&digits("12345687")),
            Err(Error::WindowTooLarge { .. })
        ));
    }

    #[test]
    fn dominated_positions_examples() {
        let pi = digits("3421");
        let unique = PipeDream::bottom(&pi);
        let d = dominated_positions(&unique, &pi).unwrap();
        assert_eq!(d.positions.iter().copied().collect::<Vec<_>>(), pi.diagram());

        let d = dominated_positions(&pd(&[(2, 1), (2, 2), (3, 1)]), &pi).unwrap();
        assert_eq!(
            d.positions.into_iter().collect::<Vec<_>>(),
            cells(&[(1, 1), (1, 2), (2, 1), (2, 2), (3, 1)])
        );
        assert!(matches!(
            dominated_positions(&pd(&[(1, 1)]), &digits("1432")),
            Err(Error::NotDominant(_))
        ));
        assert!(matches!(
            dominated_positions(&pd(&[(1, 2)]), &digits("21")),
            Err(Error::NotBelowInWeakOrder { .. })
        ));
    }

    fn sample() -> PipeDream {
        pd(&[(1, 1), (1, 3), (1, 4), (2, 4), (3, 1), (3, 2), (4, 2)])
    }

    #[test]
    fn slide_and_swap_on_sample() {
        let p = sample();
        assert_eq!(p.permutation(), &digits("216543"));
        let m = MarkedPipeDream::new(p, Pos::new(1, 5)).unwrap();
        assert!(m.is_slidable());
        let slid = m.slide().unwrap();
        assert_eq!(slid.mark, Pos::new(1, 2));
        assert_eq!(slid.pd, m.pd);

        assert!(m.is_swappable());
        let swapped = m.swap().unwrap();
        assert_eq!(swapped.mark, Pos::new(3, 1));
        assert_eq!(
            swapped.pd.crosses(),
            &cells(&[(1, 1), (1, 3), (1, 4), (1, 5), (2, 4), (3, 2), (4, 2)])[..]
        );
        assert_eq!(swapped.swap().unwrap(), m);
    }

    #[test]
    fn empty_pipe_dream_moves() {
        let m = MarkedPipeDream::new(pd(&[]), Pos::new(1, 1)).unwrap();
        assert!(!m.is_slidable());
        assert_eq!(m.slide(), Err(Error::NotSlidable(Pos::new(1, 1))));
        assert!(!m.is_swappable());
        assert_eq!(m.swap(), Err(Error::NotSwappable(Pos::new(1, 1))));
        assert_eq!(
            MarkedPipeDream::new(pd(&[(1, 1)]), Pos::new(1, 1)),
            Err(Error::MarkOnCross(Pos::new(1, 1)))
        );
    }

    #[test]
    fn render() {
        assert_eq!(render_ascii(&pd(&[]), None, None).unwrap(), ".");
        let pd_1432 = pd(&[(2, 1), (2, 2), (3, 1)]);
        assert_eq!(
            render_ascii(&pd_1432, Some(&digits("3421")), None).unwrap(),
            "oo..\n++..\n+...\n...."
        );
        assert_eq!(
            render_ascii(&pd_1432, Some(&digits("3421")), Some(Pos::new(1, 2))).unwrap(),
            "o*..\n++..\n+...\n...."
        );
        assert_eq!(
            render_ascii(&pd_1432, None, Some(Pos::new(2, 1))),
            Err(Error::MarkOnCross(Pos::new(2, 1)))
        );
    }

    #[test]
    fn json_shape() {
        let p = pd(&[(3, 1), (1, 1), (1, 2), (1, 4)]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"crosses":[[1,1],[1,2],[1,4],[3,1]]}"#);
        let back: PipeDream = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        let m = MarkedPipeDream::new(p, Pos::new(2, 2)).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"crosses":[[1,1],[1,2],[1,4],[3,1]],"mark":[2,2]}"#);
        assert_eq!(serde_json::from_str::<MarkedPipeDream>(&s).unwrap(), m);
        assert!(serde_json::from_str::<PipeDream>(r#"{"crosses":[[0,1]]}"#).is_err());
        assert!(serde_json::from_str::<MarkedPipeDream>(r#"{"crosses":[[1,1]],"mark":[1,1]}"#).is_err());
    }
}
