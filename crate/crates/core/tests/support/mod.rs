#![allow(dead_code)]

use std::collections::{BTreeMap, VecDeque};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spirality::algebra::Matrix2;
use spirality::manifold::{BoundaryRef, GraphManifold, JsjTorus, SeifertBlock, Side};
use spirality::surface::{
    Attachment, Cycle, Direction, HorizontalSurface, Step, SurfaceCircle, SurfaceEdge, SurfacePiece,
};

/// Splits `total` into `parts` positive integers.
fn partition(rng: &mut ChaCha8Rng, total: u64, parts: u64) -> Vec<u64> {
    assert!(parts >= 1 && parts <= total);
    let mut cuts: Vec<u64> = (1..total).collect();
    cuts.shuffle(rng);
    let mut cuts: Vec<u64> = cuts.into_iter().take(parts as usize - 1).collect();
    cuts.sort_unstable();
    let mut out = Vec::with_capacity(parts as usize);
    let mut last = 0;
    for c in cuts.into_iter().chain([total]) {
        out.push(c - last);
        last = c;
    }
    out
}

fn sign(rng: &mut ChaCha8Rng) -> i64 {
    if rng.gen() {
        1
    } else {
        -1
    }
}

struct Draft {
    block: String,
    labels: Vec<String>,
    degree: u64,
    circles: Vec<SurfaceCircle>,
}

/// A valid horizontal surface in a random simple graph manifold, one piece
/// per block. Deterministic in `seed`.
pub fn random_surface(seed: u64) -> HorizontalSurface {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nblocks = rng.gen_range(1..=4usize);
    let genus: Vec<u64> = (0..nblocks).map(|_| rng.gen_range(1..=2)).collect();
    let mut drafts: Vec<Draft> = (0..nblocks)
        .map(|i| Draft {
            block: format!("B{i}"),
            labels: Vec::new(),
            degree: rng.gen_range(1..=6),
            circles: Vec::new(),
        })
        .collect();

    let mut pairs: Vec<(usize, usize)> = (1..nblocks).map(|i| (rng.gen_range(0..i), i)).collect();
    let extra = rng.gen_range(0..=2usize);
    for _ in 0..extra {
        pairs.push((rng.gen_range(0..nblocks), rng.gen_range(0..nblocks)));
    }
    if pairs.is_empty() {
        // a single block still needs one torus
        pairs.push((0, 0));
    }

    let mut tori = Vec::new();
    let mut edges = Vec::new();
    for (t, &(a, b)) in pairs.iter().enumerate() {
        let (a, b) = if rng.gen() { (a, b) } else { (b, a) };
        let tid = format!("T{t}");
        let near_label = format!("t{t}n");
        let far_label = format!("t{t}f");
        drafts[a].labels.push(near_label.clone());
        drafts[b].labels.push(far_label.clone());

        let q = sign(&mut rng);
        let d = sign(&mut rng);
        let p: i64 = rng.gen_range(-4..=4);
        let s: i64 = rng.gen_range(-4..=4);
        let r = q * (p * s - d);
        let matrix = Matrix2::new(p, q, r, s);

        let (dn, df) = (drafts[a].degree, drafts[b].degree);
        let k = rng.gen_range(1..=dn.min(df));
        let near_parts = partition(&mut rng, dn, k);
        let far_parts = partition(&mut rng, df, k);
        let natt = Attachment::Torus {
            torus: tid.clone(),
            side: Side::Near,
        };
        let fatt = Attachment::Torus {
            torus: tid.clone(),
            side: Side::Far,
        };
        for i in 0..k as usize {
            let ca = sign(&mut rng) * near_parts[i] as i64;
            let fa = sign(&mut rng) * far_parts[i] as i64;
            let cb = q * (fa - p * ca);
            let (xa, xb) = (p * ca + q * cb, r * ca + s * cb);
            debug_assert_eq!(xa, fa);
            let flip = sign(&mut rng);
            let nid = format!("{tid}.{i}n");
            let fid = format!("{tid}.{i}f");
            let near = SurfaceCircle::new(&nid, &drafts[a].block, natt.clone(), ca, cb);
            let far =
                SurfaceCircle::new(&fid, &drafts[b].block, fatt.clone(), flip * xa, flip * xb);
            drafts[a].circles.push(near);
            drafts[b].circles.push(far);
            edges.push(SurfaceEdge::new(format!("{tid}.{i}"), nid, fid));
        }
        tori.push(JsjTorus {
            id: tid,
            near: BoundaryRef::new(&drafts[a].block, near_label),
            far: BoundaryRef::new(&drafts[b].block, far_label),
            matrix,
        });
    }

    let mut closed = true;
    let mut blocks = Vec::new();
    let mut pieces = Vec::new();
    let mut circles = Vec::new();
    for (i, mut d) in drafts.into_iter().enumerate() {
        let ntorus = d.labels.len() as u64;
        let kt = d.circles.len() as u64;
        let parity_ok = (kt + d.degree * ntorus).is_multiple_of(2);
        // with a free label the count must match D·(L+1) instead
        let free = if parity_ok && rng.gen_bool(0.5) {
            None
        } else {
            let want_odd = (kt + d.degree * (ntorus + 1)) % 2 == 1;
            let f = match (want_odd, d.degree) {
                (true, _) => 1,
                (false, 1) => unreachable!("degree one forces the parity"),
                (false, _) => 2,
            };
            Some(f)
        };
        if let Some(f) = free {
            closed = false;
            let label = "free".to_string();
            d.labels.push(label.clone());
            let att = Attachment::Boundary(BoundaryRef::new(&d.block, &label));
            for (j, part) in partition(&mut rng, d.degree, f).into_iter().enumerate() {
                let a = sign(&mut rng) * part as i64;
                let b: i64 = rng.gen_range(-5..=5);
                d.circles.push(SurfaceCircle::new(
                    format!("{}.free{j}", d.block),
                    &d.block,
                    att.clone(),
                    a,
                    b,
                ));
            }
        }
        let labels: Vec<&str> = d.labels.iter().map(String::as_str).collect();
        let block = SeifertBlock::new(&d.block, genus[i], &labels);
        let chi = block.euler_characteristic();
        let k = d.circles.len() as i128;
        let twice_genus = 2 - k - d.degree as i128 * chi;
        assert!(
            twice_genus >= 0 && twice_genus % 2 == 0,
            "seed {seed}: parity"
        );
        pieces.push(SurfacePiece::new(
            &d.block,
            &d.block,
            d.degree,
            (twice_genus / 2) as u64,
        ));
        blocks.push(block);
        circles.extend(d.circles);
    }

    HorizontalSurface::new(
        GraphManifold::new(blocks, tori, closed),
        pieces,
        circles,
        edges,
    )
}

fn adjacency(s: &HorizontalSurface) -> BTreeMap<String, Vec<Step>> {
    let mut adj: BTreeMap<String, Vec<Step>> = BTreeMap::new();
    for id in s.edges.keys() {
        for d in [Direction::Forward, Direction::Backward] {
            let step = Step::new(id, d);
            let (from, _) = s.endpoints(&step).unwrap();
            adj.entry(from.to_string()).or_default().push(step);
        }
    }
    adj
}

/// Shortest walk between two pieces.
fn path(
    s: &HorizontalSurface,
    adj: &BTreeMap<String, Vec<Step>>,
    from: &str,
    to: &str,
) -> Vec<Step> {
    let mut prev: BTreeMap<String, Step> = BTreeMap::new();
    let mut queue = VecDeque::from([from.to_string()]);
    let mut seen = std::collections::BTreeSet::from([from.to_string()]);
    while let Some(v) = queue.pop_front() {
        if v == to {
            break;
        }
        for step in adj.get(&v).into_iter().flatten() {
            let (_, w) = s.endpoints(step).unwrap();
            if seen.insert(w.to_string()) {
                prev.insert(w.to_string(), step.clone());
                queue.push_back(w.to_string());
            }
        }
    }
    let mut out = Vec::new();
    let mut cur = to.to_string();
    while cur != from {
        let step = prev[&cur].clone();
        cur = s.endpoints(&step).unwrap().0.to_string();
        out.push(step);
    }
    out.reverse();
    out
}

/// A random closed walk of at least one step: a random walk of up to `len`
/// steps from a random piece, closed by a shortest path home. `None` when
/// the surface has no edges.
pub fn random_closed_walk(s: &HorizontalSurface, seed: u64, len: usize) -> Option<Cycle> {
    let adj = adjacency(s);
    let starts: Vec<&String> = adj.keys().collect();
    if starts.is_empty() {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start = starts[rng.gen_range(0..starts.len())].clone();
    Some(walk_from(s, &adj, &mut rng, &start, len))
}

/// As [`random_closed_walk`], based at `start`.
pub fn random_closed_walk_from(
    s: &HorizontalSurface,
    start: &str,
    seed: u64,
    len: usize,
) -> Option<Cycle> {
    let adj = adjacency(s);
    if !adj.contains_key(start) {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Some(walk_from(s, &adj, &mut rng, start, len))
}

fn walk_from(
    s: &HorizontalSurface,
    adj: &BTreeMap<String, Vec<Step>>,
    rng: &mut ChaCha8Rng,
    start: &str,
    len: usize,
) -> Cycle {
    let mut cur = start.to_string();
    let mut steps = Vec::new();
    for _ in 0..rng.gen_range(1..=len.max(1)) {
        let out = &adj[&cur];
        let step = out[rng.gen_range(0..out.len())].clone();
        cur = s.endpoints(&step).unwrap().1.to_string();
        steps.push(step);
    }
    steps.extend(path(s, adj, &cur, start));
    Cycle::new(steps)
}

/// Every oriented edge of `s`.
pub fn oriented_edges(s: &HorizontalSurface) -> Vec<(String, Direction)> {
    s.edges
        .keys()
        .flat_map(|e| {
            [
                (e.clone(), Direction::Forward),
                (e.clone(), Direction::Backward),
            ]
        })
        .collect()
}
