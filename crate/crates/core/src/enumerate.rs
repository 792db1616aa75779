//! Exhaustive generation of single-tile tilings up to dihedral relabelling.
//!
//! The search pairs the smallest unpaired edge with every larger unpaired
//! edge (and each admissible sign). Placing a pair fixes two (orientable) or
//! four (signed) transitions of the corner successor permutation, which is
//! maintained as a set of open chains; a chain closing into a cycle is a
//! finished vertex. Branches are cut when a vertex closes below the minimum
//! degree or when the vertex count can no longer hit the requested Euler
//! number. Completed diagrams are emitted only if they are their own
//! canonical representative.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::sync::Mutex;

use rayon::prelude::*;
use thiserror::Error;

use crate::feasibility::single_tile_n_range;
use crate::model::{PlanarDiagram, Sign, Surface, TilingSummary};
use crate::symmetry::{canonical_form, compare_image, CanonicalKey, DihedralElement};
use crate::trace::classify;

/// Raw search spaces above this many leaves need an explicit opt-in.
pub const LARGE_SEARCH_THRESHOLD: f64 = 1e9;

/// Largest `n` the unpruned oracle accepts without an override.
pub const NAIVE_MAX_N: usize = 14;

#[derive(Debug, Error)]
pub enum EnumerationError {
    #[error("out of scope: polygon size {0} must be even and at least 8")]
    OutOfScope(usize),
    #[error("contradictory filter: {0}")]
    FilterContradiction(String),
    #[error("raw search space of about {estimate:.3e} leaves exceeds {LARGE_SEARCH_THRESHOLD:.0e}; pass the long-run flag to proceed")]
    TooLarge { estimate: f64 },
    #[error("checkpoint {path}: {reason}")]
    Checkpoint { path: PathBuf, reason: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    OrientableOnly,
    AllSigned,
}

/// Restricts results to one Euler number and/or orientability.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SurfaceFilter {
    pub chi: Option<i64>,
    pub orientable: Option<bool>,
}

impl SurfaceFilter {
    pub fn surface(s: Surface) -> SurfaceFilter {
        SurfaceFilter {
            chi: Some(s.chi()),
            orientable: Some(s.is_orientable()),
        }
    }

    pub fn chi(chi: i64) -> SurfaceFilter {
        SurfaceFilter {
            chi: Some(chi),
            orientable: None,
        }
    }

    fn accepts(&self, s: Surface) -> bool {
        self.chi.is_none_or(|c| c == s.chi())
            && self.orientable.is_none_or(|o| o == s.is_orientable())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Emit {
    CountOnly,
    Catalog,
}

#[derive(Debug, Clone)]
pub struct EnumerationRequest {
    pub n: usize,
    pub mode: Mode,
    pub filter: SurfaceFilter,
    pub min_degree: usize,
    pub emit: Emit,
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
    /// Permit searches above [`LARGE_SEARCH_THRESHOLD`].
    pub allow_large: bool,
    /// Discard partial diagrams that provably cannot be canonical.
    pub prefix_pruning: bool,
    /// Count-only runs may record finished work units here and resume.
    pub checkpoint: Option<PathBuf>,
}

impl EnumerationRequest {
    pub fn new(n: usize, mode: Mode) -> EnumerationRequest {
        EnumerationRequest {
            n,
            mode,
            filter: SurfaceFilter::default(),
            min_degree: 3,
            emit: Emit::CountOnly,
            threads: None,
            allow_large: false,
            prefix_pruning: true,
            checkpoint: None,
        }
    }

    pub fn with_filter(mut self, filter: SurfaceFilter) -> EnumerationRequest {
        self.filter = filter;
        self
    }

    pub fn with_surface(self, s: Surface) -> EnumerationRequest {
        self.with_filter(SurfaceFilter::surface(s))
    }

    pub fn with_emit(mut self, emit: Emit) -> EnumerationRequest {
        self.emit = emit;
        self
    }

    fn validate(&self) -> Result<(), EnumerationError> {
        if !self.n.is_multiple_of(2) || self.n < 8 || self.n > 126 {
            return Err(EnumerationError::OutOfScope(self.n));
        }
        if self.mode == Mode::OrientableOnly && self.filter.orientable == Some(false) {
            return Err(EnumerationError::FilterContradiction(
                "orientable-only mode with a non-orientable surface".into(),
            ));
        }
        let orientable_only =
            self.mode == Mode::OrientableOnly || self.filter.orientable == Some(true);
        if let Some(chi) = self.filter.chi {
            if orientable_only && chi % 2 != 0 {
                return Err(EnumerationError::FilterContradiction(format!(
                    "orientable surfaces have even Euler number, got {chi}"
                )));
            }
            if self.filter.orientable == Some(false) && chi > 1 {
                return Err(EnumerationError::FilterContradiction(format!(
                    "no non-orientable surface has Euler number {chi}"
                )));
            }
        }
        if self.checkpoint.is_some() && self.emit == Emit::Catalog {
            return Err(EnumerationError::FilterContradiction(
                "checkpointing is only supported for count-only runs".into(),
            ));
        }
        Ok(())
    }

    /// Whether signs other than `+` are explored.
    fn signed(&self) -> bool {
        self.mode == Mode::AllSigned && self.filter.orientable != Some(true)
    }
}

/// Number of leaves of the unpruned search: `(n-1)!!`, times `2^(n/2)`
/// when twisted pairs are allowed.
pub fn raw_search_space(n: usize, mode: Mode) -> f64 {
    let mut total = 1.0f64;
    let mut k = n.saturating_sub(1);
    while k > 1 {
        total *= k as f64;
        k -= 2;
    }
    if mode == Mode::AllSigned {
        total *= 2f64.powi((n / 2) as i32);
    }
    total
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EnumerationResult {
    pub n: usize,
    /// Number of equivalence classes found, per surface.
    pub counts: BTreeMap<Surface, u64>,
    /// Canonical representatives sorted by key, when requested.
    pub catalog: Option<Vec<PlanarDiagram>>,
    /// Search nodes visited (including resumed work).
    pub nodes: u64,
}

impl EnumerationResult {
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn count(&self, s: Surface) -> u64 {
        self.counts.get(&s).copied().unwrap_or(0)
    }
}

/// Snapshot passed to progress callbacks.
#[derive(Debug, Clone, Copy)]
pub struct Progress {
    pub nodes: u64,
    pub emitted: u64,
    pub tasks_done: usize,
    pub tasks_total: usize,
}

pub type ProgressFn<'a> = &'a (dyn Fn(&Progress) + Sync);

/// Progress callback for census runs, told the polygon size as well.
pub type CensusProgressFn<'a> = &'a (dyn Fn(usize, &Progress) + Sync);

const PROGRESS_INTERVAL: u64 = 1 << 20;

#[derive(Clone, Copy, Default)]
struct Undo {
    close: bool,
    x: u16,
    y: u16,
    hx: u16,
    ty: u16,
}

type PairChoice = (u8, u8, Sign);

/// Search state for one work unit.
struct Engine {
    n: usize,
    signed: bool,
    min_degree: usize,
    /// Required number of permutation cycles (vertices, doubled when signed).
    target_cycles: Option<usize>,
    prefix_pruning: bool,
    partner: Vec<u8>,
    sign: Vec<Sign>,
    head_of_tail: Vec<u16>,
    tail_of_head: Vec<u16>,
    len: Vec<u16>,
    states: usize,
    closed_cycles: usize,
    closed_states: usize,
    open_chains: usize,
    short_cycle: bool,
    min_gap: usize,
    nodes: u64,
}

const UNPAIRED: u8 = u8::MAX;

impl Engine {
    fn new(req: &EnumerationRequest) -> Engine {
        let n = req.n;
        let signed = req.signed();
        let states = if signed { 2 * n } else { n };
        let mult = if signed { 2 } else { 1 };
        let target_cycles = req.filter.chi.map(|chi| {
            let v = chi + (n / 2) as i64 - 1;
            if v < 1 {
                usize::MAX
            } else {
                v as usize * mult
            }
        });
        let ids: Vec<u16> = (0..states as u16).collect();
        Engine {
            n,
            signed,
            min_degree: req.min_degree.max(1),
            target_cycles,
            prefix_pruning: req.prefix_pruning,
            partner: vec![UNPAIRED; n],
            sign: vec![Sign::Plus; n],
            head_of_tail: ids.clone(),
            tail_of_head: ids,
            len: vec![1; states],
            states,
            closed_cycles: 0,
            closed_states: 0,
            open_chains: states,
            short_cycle: false,
            min_gap: 0,
            nodes: 0,
        }
    }

    fn state(&self, corner: usize, sign: Sign) -> u16 {
        let c = corner % self.n;
        if self.signed {
            (2 * c + usize::from(sign == Sign::Minus)) as u16
        } else {
            c as u16
        }
    }

    fn link(&mut self, x: u16, y: u16) -> Undo {
        let hx = self.head_of_tail[x as usize];
        let ty = self.tail_of_head[y as usize];
        self.open_chains -= 1;
        if hx == y {
            let l = self.len[y as usize] as usize;
            self.closed_cycles += 1;
            self.closed_states += l;
            if l < self.min_degree {
                self.short_cycle = true;
            }
            Undo {
                close: true,
                x,
                y,
                hx,
                ty,
            }
        } else {
            self.tail_of_head[hx as usize] = ty;
            self.head_of_tail[ty as usize] = hx;
            self.len[hx as usize] += self.len[y as usize];
            Undo {
                close: false,
                x,
                y,
                hx,
                ty,
            }
        }
    }

    fn unlink(&mut self, u: Undo) {
        self.open_chains += 1;
        if u.close {
            let l = self.len[u.y as usize] as usize;
            self.closed_cycles -= 1;
            self.closed_states -= l;
        } else {
            self.tail_of_head[u.hx as usize] = u.x;
            self.head_of_tail[u.ty as usize] = u.y;
            self.len[u.hx as usize] -= self.len[u.y as usize];
        }
    }

    /// Places pair `a-b` and its successor transitions. Returns the undo
    /// records and whether the state is still viable.
    fn place(&mut self, a: usize, b: usize, s: Sign) -> ([Undo; 4], usize, bool) {
        self.partner[a] = b as u8;
        self.partner[b] = a as u8;
        self.sign[a] = s;
        self.sign[b] = s;
        let mut undo = [Undo::default(); 4];
        let (p, m) = (Sign::Plus, Sign::Minus);
        let transitions: [(u16, u16); 4];
        let count;
        if !self.signed {
            transitions = [
                (self.state(a, p), self.state(b + 1, p)),
                (self.state(b, p), self.state(a + 1, p)),
                (0, 0),
                (0, 0),
            ];
            count = 2;
        } else {
            transitions = match s {
                Sign::Plus => [
                    (self.state(a, p), self.state(b + 1, p)),
                    (self.state(b, p), self.state(a + 1, p)),
                    (self.state(a + 1, m), self.state(b, m)),
                    (self.state(b + 1, m), self.state(a, m)),
                ],
                Sign::Minus => [
                    (self.state(a, p), self.state(b, m)),
                    (self.state(b, p), self.state(a, m)),
                    (self.state(a + 1, m), self.state(b + 1, p)),
                    (self.state(b + 1, m), self.state(a + 1, p)),
                ],
            };
            count = 4;
        }
        for (k, &(x, y)) in transitions[..count].iter().enumerate() {
            undo[k] = self.link(x, y);
        }
        let ok = !self.short_cycle && self.cycle_count_feasible();
        (undo, count, ok)
    }

    fn unplace(&mut self, a: usize, b: usize, undo: &[Undo; 4], count: usize, short_before: bool) {
        for u in undo[..count].iter().rev() {
            self.unlink(*u);
        }
        self.short_cycle = short_before;
        self.partner[a] = UNPAIRED;
        self.partner[b] = UNPAIRED;
        self.sign[a] = Sign::Plus;
        self.sign[b] = Sign::Plus;
    }

    fn cycle_count_feasible(&self) -> bool {
        let Some(target) = self.target_cycles else {
            return true;
        };
        if self.closed_cycles > target {
            return false;
        }
        let open = self.states - self.closed_states;
        if open == 0 {
            return self.closed_cycles == target;
        }
        let future_max = self.open_chains.min(open / self.min_degree);
        self.closed_cycles < target && self.closed_cycles + future_max >= target
    }

    fn first_unpaired(&self, from: usize) -> Option<usize> {
        (from..self.n).find(|&i| self.partner[i] == UNPAIRED)
    }

    /// Minimum-gap rule: the canonical representative pairs edge 0 with its
    /// nearest possible partner, so no pair may be cyclically closer than
    /// the partner of edge 0, and if edge 0 is twisted every pair at that
    /// distance must be twisted too.
    fn gap_allows(&self, a: usize, b: usize, s: Sign) -> bool {
        if !self.prefix_pruning || a == 0 {
            return true;
        }
        let d = (b - a).min(self.n - (b - a));
        d > self.min_gap || (d == self.min_gap && (s == Sign::Minus || self.sign[0] == Sign::Plus))
    }

    fn signs(&self) -> &'static [Sign] {
        if self.signed {
            &[Sign::Plus, Sign::Minus]
        } else {
            &[Sign::Plus]
        }
    }

    /// Applies the gap rule and places the pair. Returns the undo records,
    /// viability, and the previous minimum gap.
    fn try_place(
        &mut self,
        a: usize,
        b: usize,
        s: Sign,
    ) -> Option<([Undo; 4], usize, bool, usize)> {
        if !self.gap_allows(a, b, s) {
            return None;
        }
        let gap_before = self.min_gap;
        if a == 0 {
            // edge 0 has to realize the minimum gap itself
            if self.prefix_pruning && b > self.n / 2 {
                return None;
            }
            self.min_gap = b.min(self.n - b);
        }
        let (undo, count, ok) = self.place(a, b, s);
        Some((undo, count, ok, gap_before))
    }

    fn search<F: FnMut(&Engine)>(&mut self, from: usize, leaf: &mut F) {
        self.nodes += 1;
        let Some(a) = self.first_unpaired(from) else {
            leaf(self);
            return;
        };
        for b in a + 1..self.n {
            if self.partner[b] != UNPAIRED {
                continue;
            }
            for &s in self.signs() {
                let short_before = self.short_cycle;
                let Some((undo, count, ok, gap_before)) = self.try_place(a, b, s) else {
                    continue;
                };
                if ok {
                    self.search(a + 1, leaf);
                }
                self.unplace(a, b, &undo, count, short_before);
                self.min_gap = gap_before;
            }
        }
    }

    /// Enumerates viable partial assignments of the first `depth` pairs.
    fn prefixes(
        &mut self,
        depth: usize,
        from: usize,
        current: &mut Vec<PairChoice>,
        out: &mut Vec<Vec<PairChoice>>,
    ) {
        let Some(a) = self.first_unpaired(from).filter(|_| current.len() < depth) else {
            out.push(current.clone());
            return;
        };
        for b in a + 1..self.n {
            if self.partner[b] != UNPAIRED {
                continue;
            }
            for &s in self.signs() {
                let short_before = self.short_cycle;
                let Some((undo, count, ok, gap_before)) = self.try_place(a, b, s) else {
                    continue;
                };
                if ok {
                    current.push((a as u8, b as u8, s));
                    self.prefixes(depth, a + 1, current, out);
                    current.pop();
                }
                self.unplace(a, b, &undo, count, short_before);
                self.min_gap = gap_before;
            }
        }
    }

    fn apply_prefix(&mut self, prefix: &[PairChoice]) {
        for &(a, b, s) in prefix {
            let (_, _, ok, _) = self
                .try_place(a as usize, b as usize, s)
                .expect("prefix was generated by the same rules");
            debug_assert!(ok);
        }
    }

    fn is_canonical(&self) -> bool {
        DihedralElement::all(self.n)
            .skip(1)
            .all(|g| compare_image(&self.partner, &self.sign, g) != std::cmp::Ordering::Less)
    }

    fn surface(&self) -> Surface {
        let mult = if self.signed { 2 } else { 1 };
        let v = (self.closed_cycles / mult) as i64;
        let chi = v - (self.n / 2) as i64 + 1;
        let orientable = self.sign.iter().all(|s| s.is_plus());
        Surface::from_chi(chi, orientable).expect("traced surface is consistent")
    }
}

#[derive(Default)]
struct TaskOutcome {
    counts: BTreeMap<Surface, u64>,
    catalog: Vec<PlanarDiagram>,
    nodes: u64,
}

fn run_task<S: Fn(&PlanarDiagram, Surface) + Sync>(
    req: &EnumerationRequest,
    prefix: &[PairChoice],
    sink: &S,
    nodes_total: &AtomicU64,
) -> TaskOutcome {
    let mut engine = Engine::new(req);
    engine.apply_prefix(prefix);
    let mut out = TaskOutcome::default();
    let collect = req.emit == Emit::Catalog;
    let filter = req.filter;
    let mut leaf = |e: &Engine| {
        let surface = e.surface();
        if !filter.accepts(surface) || !e.is_canonical() {
            return;
        }
        *out.counts.entry(surface).or_default() += 1;
        let d = PlanarDiagram::from_tables(e.partner.clone(), e.sign.clone());
        sink(&d, surface);
        if collect {
            out.catalog.push(d);
        }
    };
    let start = prefix.iter().map(|p| p.0 as usize + 1).max().unwrap_or(0);
    engine.search(start, &mut leaf);
    out.nodes = engine.nodes;
    nodes_total.fetch_add(engine.nodes, AtomicOrdering::Relaxed);
    out
}

const SPLIT_DEPTH: usize = 2;

fn work_units(req: &EnumerationRequest) -> Vec<Vec<PairChoice>> {
    let mut engine = Engine::new(req);
    let mut out = Vec::new();
    engine.prefixes(SPLIT_DEPTH, 0, &mut Vec::new(), &mut out);
    out
}

/// Cheap rejection of requests that cannot produce anything.
fn trivially_empty(req: &EnumerationRequest) -> bool {
    match req.filter.chi {
        Some(chi) => {
            let v = chi + (req.n / 2) as i64 - 1;
            v < 1 || v as usize * req.min_degree.max(1) > req.n
        }
        None => false,
    }
}

/// Runs the search, handing each canonical representative to `sink`
/// (possibly from several threads at once).
pub fn enumerate_with_sink<S>(
    req: &EnumerationRequest,
    sink: &S,
    progress: Option<ProgressFn<'_>>,
) -> Result<EnumerationResult, EnumerationError>
where
    S: Fn(&PlanarDiagram, Surface) + Sync,
{
    req.validate()?;
    let mode = if req.signed() {
        Mode::AllSigned
    } else {
        Mode::OrientableOnly
    };
    let estimate = raw_search_space(req.n, mode);
    if estimate > LARGE_SEARCH_THRESHOLD && !req.allow_large {
        return Err(EnumerationError::TooLarge { estimate });
    }
    let mut result = EnumerationResult {
        n: req.n,
        catalog: (req.emit == Emit::Catalog).then(Vec::new),
        ..Default::default()
    };
    if trivially_empty(req) {
        return Ok(result);
    }

    let units = work_units(req);
    let mut checkpoint = match &req.checkpoint {
        Some(path) => Some(Checkpoint::open(path, req, units.len())?),
        None => None,
    };
    let done: BTreeMap<usize, TaskOutcome> = checkpoint
        .as_mut()
        .map(|c| std::mem::take(&mut c.done))
        .unwrap_or_default();

    let nodes_total = AtomicU64::new(done.values().map(|o| o.nodes).sum());
    let emitted = AtomicU64::new(done.values().flat_map(|o| o.counts.values()).sum());
    let tasks_done = AtomicU64::new(done.len() as u64);
    let checkpoint = checkpoint.map(Mutex::new);
    let last_report = AtomicU64::new(0);

    let report = |force: bool| {
        if let Some(p) = progress {
            let nodes = nodes_total.load(AtomicOrdering::Relaxed);
            let bucket = nodes / PROGRESS_INTERVAL;
            if force || bucket > last_report.load(AtomicOrdering::Relaxed) {
                last_report.store(bucket, AtomicOrdering::Relaxed);
                p(&Progress {
                    nodes,
                    emitted: emitted.load(AtomicOrdering::Relaxed),
                    tasks_done: tasks_done.load(AtomicOrdering::Relaxed) as usize,
                    tasks_total: units.len(),
                });
            }
        }
    };

    let run = |(idx, prefix): (usize, &Vec<PairChoice>)| -> Result<(usize, TaskOutcome), EnumerationError> {
        let outcome = run_task(req, prefix, sink, &nodes_total);
        emitted.fetch_add(outcome.counts.values().sum(), AtomicOrdering::Relaxed);
        tasks_done.fetch_add(1, AtomicOrdering::Relaxed);
        if let Some(c) = &checkpoint {
            c.lock().expect("checkpoint lock").record(idx, &outcome)?;
        }
        report(false);
        Ok((idx, outcome))
    };

    let pending: Vec<(usize, &Vec<PairChoice>)> = units
        .iter()
        .enumerate()
        .filter(|(i, _)| !done.contains_key(i))
        .collect();
    let outcomes: Vec<Result<(usize, TaskOutcome), EnumerationError>> = match req.threads {
        Some(1) => pending.into_iter().map(run).collect(),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(std::io::Error::other)?
            .install(|| pending.into_par_iter().map(run).collect()),
        None => pending.into_par_iter().map(run).collect(),
    };

    let mut all: Vec<TaskOutcome> = done.into_values().collect();
    for o in outcomes {
        all.push(o?.1);
    }
    for o in all {
        for (s, c) in o.counts {
            *result.counts.entry(s).or_default() += c;
        }
        result.nodes += o.nodes;
        if let Some(cat) = result.catalog.as_mut() {
            cat.extend(o.catalog);
        }
    }
    if let Some(cat) = result.catalog.as_mut() {
        cat.sort_by_cached_key(CanonicalKey::of);
    }
    report(true);
    Ok(result)
}

pub fn enumerate_diagrams(req: &EnumerationRequest) -> Result<EnumerationResult, EnumerationError> {
    enumerate_with_sink(req, &|_, _| {}, None)
}

/// Work-unit bookkeeping for resumable count-only runs.
struct Checkpoint {
    file: File,
    path: PathBuf,
    done: BTreeMap<usize, TaskOutcome>,
}

fn request_fingerprint(req: &EnumerationRequest, units: usize) -> String {
    format!(
        "n={} mode={:?} chi={:?} orientable={:?} min_degree={} prefix_pruning={} units={}",
        req.n,
        req.mode,
        req.filter.chi,
        req.filter.orientable,
        req.min_degree,
        req.prefix_pruning,
        units
    )
}

impl Checkpoint {
    fn open(
        path: &Path,
        req: &EnumerationRequest,
        units: usize,
    ) -> Result<Checkpoint, EnumerationError> {
        let fingerprint = format!("# request {}", request_fingerprint(req, units));
        let bad = |reason: String| EnumerationError::Checkpoint {
            path: path.to_path_buf(),
            reason,
        };
        let mut done = BTreeMap::new();
        if path.exists() {
            let reader = BufReader::new(File::open(path)?);
            let mut lines = reader.lines();
            let header = lines.next().transpose()?.unwrap_or_default();
            if header != fingerprint {
                return Err(bad(format!("belongs to a different request ({header})")));
            }
            for line in lines {
                let line = line?;
                let mut fields = line.split_whitespace();
                if fields.next() != Some("done") {
                    continue;
                }
                let parse = |s: Option<&str>| s.and_then(|s| s.parse::<u64>().ok());
                let (Some(idx), Some(nodes)) = (parse(fields.next()), parse(fields.next())) else {
                    return Err(bad(format!("malformed line {line:?}")));
                };
                let mut outcome = TaskOutcome {
                    nodes,
                    ..Default::default()
                };
                for f in fields {
                    let (name, count) = f
                        .split_once('=')
                        .ok_or_else(|| bad(format!("malformed count {f:?}")))?;
                    let s: Surface = name.parse().map_err(|e| bad(format!("{e}")))?;
                    let c: u64 = count
                        .parse()
                        .map_err(|_| bad(format!("malformed count {f:?}")))?;
                    outcome.counts.insert(s, c);
                }
                done.insert(idx as usize, outcome);
            }
            let file = OpenOptions::new().append(true).open(path)?;
            Ok(Checkpoint {
                file,
                path: path.to_path_buf(),
                done,
            })
        } else {
            let mut file = File::create(path)?;
            writeln!(file, "{fingerprint}")?;
            file.flush()?;
            Ok(Checkpoint {
                file,
                path: path.to_path_buf(),
                done,
            })
        }
    }

    fn record(&mut self, idx: usize, outcome: &TaskOutcome) -> Result<(), EnumerationError> {
        let mut line = format!("done {idx} {}", outcome.nodes);
        for (s, c) in &outcome.counts {
            line.push_str(&format!(" {s}={c}"));
        }
        writeln!(self.file, "{line}").map_err(|e| EnumerationError::Checkpoint {
            path: self.path.clone(),
            reason: e.to_string(),
        })?;
        self.file.flush()?;
        Ok(())
    }
}

/// Result of the unpruned oracle.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NaiveResult {
    /// Distinct canonical keys per surface.
    pub classes: BTreeMap<Surface, u64>,
    /// Labelled diagrams passing the filters, per surface.
    pub labeled: BTreeMap<Surface, u64>,
}

fn all_matchings(n: usize, signed: bool, visit: &mut dyn FnMut(&PlanarDiagram)) {
    fn rec(
        partner: &mut Vec<Option<(usize, Sign)>>,
        signed: bool,
        visit: &mut dyn FnMut(&PlanarDiagram),
    ) {
        let n = partner.len();
        let Some(a) = partner.iter().position(Option::is_none) else {
            let pairs: Vec<_> = partner
                .iter()
                .enumerate()
                .filter_map(|(i, p)| p.filter(|&(j, _)| i < j).map(|(j, s)| (i, j, s)))
                .collect();
            visit(&PlanarDiagram::new(n, &pairs).expect("complete matching"));
            return;
        };
        let signs: &[Sign] = if signed {
            &[Sign::Plus, Sign::Minus]
        } else {
            &[Sign::Plus]
        };
        for b in a + 1..n {
            if partner[b].is_some() {
                continue;
            }
            for &s in signs {
                partner[a] = Some((b, s));
                partner[b] = Some((a, s));
                rec(partner, signed, visit);
                partner[a] = None;
                partner[b] = None;
            }
        }
    }
    rec(&mut vec![None; n], signed, visit)
}

/// Oracle: classifies every matching without pruning and counts distinct
/// canonical keys.
pub fn enumerate_naive(
    req: &EnumerationRequest,
    allow_large: bool,
) -> Result<NaiveResult, EnumerationError> {
    req.validate()?;
    if req.n > NAIVE_MAX_N && !allow_large {
        return Err(EnumerationError::TooLarge {
            estimate: raw_search_space(req.n, req.mode),
        });
    }
    let mut keys: BTreeMap<Surface, HashSet<CanonicalKey>> = BTreeMap::new();
    let mut labeled: BTreeMap<Surface, u64> = BTreeMap::new();
    all_matchings(req.n, req.mode == Mode::AllSigned, &mut |d| {
        let summary: TilingSummary = classify(d);
        if summary.degrees.first().is_some_and(|&k| k < req.min_degree)
            || !req.filter.accepts(summary.surface)
        {
            return;
        }
        *labeled.entry(summary.surface).or_default() += 1;
        keys.entry(summary.surface)
            .or_default()
            .insert(canonical_form(d).key);
    });
    Ok(NaiveResult {
        classes: keys.into_iter().map(|(s, k)| (s, k.len() as u64)).collect(),
        labeled,
    })
}

/// One census line: counts per polygon size for one surface.
#[derive(Debug, Clone, PartialEq)]
pub struct CensusRow {
    pub surface: Surface,
    pub counts: BTreeMap<usize, u64>,
    /// Sizes not run because they need the long-run flag, with estimates.
    pub skipped: Vec<(usize, f64)>,
}

#[derive(Debug, Clone, Default)]
pub struct CensusOptions {
    pub threads: Option<usize>,
    pub allow_large: bool,
    /// Directory for per-size checkpoint files.
    pub checkpoint_dir: Option<PathBuf>,
}

pub fn census(
    surface: Surface,
    opts: &CensusOptions,
    progress: Option<CensusProgressFn<'_>>,
) -> Result<CensusRow, EnumerationError> {
    let chi = surface.chi();
    let (lo, hi) = single_tile_n_range(chi).map_err(|_| EnumerationError::OutOfScope(0))?;
    let mode = if surface.is_orientable() {
        Mode::OrientableOnly
    } else {
        Mode::AllSigned
    };
    let mut row = CensusRow {
        surface,
        counts: BTreeMap::new(),
        skipped: Vec::new(),
    };
    for n in (lo..=hi).step_by(2) {
        let estimate = raw_search_space(n, mode);
        if estimate > LARGE_SEARCH_THRESHOLD && !opts.allow_large {
            row.skipped.push((n, estimate));
            continue;
        }
        let mut req = EnumerationRequest::new(n, mode).with_surface(surface);
        req.threads = opts.threads;
        req.allow_large = opts.allow_large;
        req.checkpoint = opts
            .checkpoint_dir
            .as_ref()
            .map(|dir| dir.join(format!("census-{surface}-{n}.ckpt")));
        let per_n = progress.map(|p| move |pr: &Progress| p(n, pr));
        let result = enumerate_with_sink(
            &req,
            &|_, _| {},
            per_n.as_ref().map(|f| f as ProgressFn<'_>),
        )?;
        row.counts.insert(n, result.count(surface));
    }
    Ok(row)
}

/// Distinct surfaces reachable at polygon size `n` by single-tile tilings
/// with every vertex of degree at least 3.
pub fn surfaces_at(n: usize, mode: Mode) -> BTreeSet<Surface> {
    let e = (n / 2) as i64;
    let mut out = BTreeSet::new();
    for v in 1..=(n / 3) as i64 {
        let chi = v - e + 1;
        if let Ok(s) = Surface::from_chi(chi, true) {
            out.insert(s);
        }
        if mode == Mode::AllSigned {
            if let Ok(s) = Surface::from_chi(chi, false) {
                out.insert(s);
            }
        }
    }
    out
}
