//! Coset graphs: construction, distance-regularity, antipodal fibres,
//! folding, covers between chain levels, and export.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits::solve_in_row_space;
use crate::codes::LinearCode;
use crate::error::{Error, Result};
use crate::regularity::IntersectionArray;

pub const MAX_GRAPH_BITS: usize = 14;

/// Simple undirected graph with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<u32>>,
}

impl Graph {
    /// Builds from adjacency lists; they are sorted and checked for symmetry.
    pub fn from_adjacency(mut adj: Vec<Vec<u32>>) -> Result<Self> {
        let n = adj.len();
        for (v, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            list.dedup();
            if list.iter().any(|&w| w as usize >= n || w as usize == v) {
                return Err(Error::Internal(format!("bad neighbour list at vertex {v}")));
            }
        }
        for (v, list) in adj.iter().enumerate() {
            for &w in list {
                if adj[w as usize].binary_search(&(v as u32)).is_err() {
                    return Err(Error::Internal(format!("edge {v}-{w} is not symmetric")));
                }
            }
        }
        Ok(Graph { adj })
    }

    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            if a as usize >= n || b as usize >= n {
                return Err(Error::Internal(format!("edge {a}-{b} out of range")));
            }
            adj[a as usize].push(b);
            adj[b as usize].push(a);
        }
        Graph::from_adjacency(adj)
    }

    pub fn complete(n: usize) -> Self {
        Graph {
            adj: (0..n)
                .map(|v| (0..n as u32).filter(|&w| w as usize != v).collect())
                .collect(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adj[v]
    }

    pub fn adjacency(&self) -> &[Vec<u32>] {
        &self.adj
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&(b as u32)).is_ok()
    }

    /// Valency if regular.
    pub fn valency(&self) -> Option<usize> {
        let k = self.adj.first().map_or(0, Vec::len);
        self.adj.iter().all(|l| l.len() == k).then_some(k)
    }

    pub fn is_complete(&self) -> bool {
        let n = self.vertex_count();
        self.adj.iter().all(|l| l.len() + 1 == n)
    }

    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.adj.iter().enumerate().flat_map(|(v, l)| {
            l.iter()
                .filter(move |&&w| (v as u32) < w)
                .map(move |&w| (v as u32, w))
        })
    }

    /// BFS distances from `base`; unreachable vertices get `u8::MAX`.
    pub fn distances_from(&self, base: usize) -> Vec<u8> {
        let mut dist = vec![u8::MAX; self.vertex_count()];
        dist[base] = 0;
        let mut queue = std::collections::VecDeque::from([base as u32]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v as usize];
            for &w in &self.adj[v as usize] {
                if dist[w as usize] == u8::MAX {
                    dist[w as usize] = d + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }
}

/// Cayley graph on the syndromes of a code: s ~ s' iff s + s' is a column.
#[derive(Clone, Debug)]
pub struct CosetGraph {
    pub graph: Graph,
    pub syndrome_bits: usize,
    pub generator_syndromes: Vec<u64>,
}

pub fn build_coset_graph(code: &LinearCode) -> Result<CosetGraph> {
    let bits = code.redundancy();
    if bits > MAX_GRAPH_BITS {
        return Err(Error::TooLarge {
            what: "coset graph (syndrome bits)",
            size: bits,
            limit: MAX_GRAPH_BITS,
        });
    }
    let gens: Vec<u64> = code.column_syndromes().to_vec();
    let distinct: BTreeSet<u64> = gens.iter().copied().collect();
    if distinct.len() != gens.len() || distinct.contains(&0) {
        return Err(Error::Internal(
            "parity columns must be distinct and nonzero".into(),
        ));
    }
    let size = 1usize << bits;
    let adj = (0..size as u64)
        .map(|s| {
            let mut l: Vec<u32> = gens.iter().map(|&g| (s ^ g) as u32).collect();
            l.sort_unstable();
            l
        })
        .collect();
    Ok(CosetGraph {
        graph: Graph { adj },
        syndrome_bits: bits,
        generator_syndromes: gens,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DistancePartition {
    pub base: usize,
    pub distance: Vec<u8>,
    pub level_sizes: Vec<usize>,
}

pub fn distance_partition(graph: &Graph, base: usize) -> DistancePartition {
    let distance = graph.distances_from(base);
    let d = distance
        .iter()
        .filter(|&&x| x != u8::MAX)
        .max()
        .copied()
        .unwrap_or(0) as usize;
    let mut level_sizes = vec![0; d + 1];
    for &x in distance.iter().filter(|&&x| x != u8::MAX) {
        level_sizes[x as usize] += 1;
    }
    DistancePartition {
        base,
        distance,
        level_sizes,
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DrgReport {
    pub distance_regular: bool,
    pub diameter: usize,
    pub array: Option<IntersectionArray>,
    pub bases_checked: usize,
    pub witness: Option<String>,
}

/// Per-level (c_i, b_i) seen from one base, or a description of the failure.
fn local_array(graph: &Graph, base: usize) -> std::result::Result<Vec<(u64, u64)>, String> {
    let dist = graph.distances_from(base);
    if let Some(v) = dist.iter().position(|&d| d == u8::MAX) {
        return Err(format!(
            "graph is disconnected: vertex {v} unreachable from {base}"
        ));
    }
    let diam = *dist.iter().max().unwrap() as usize;
    let mut levels: Vec<Option<(u64, u64)>> = vec![None; diam + 1];
    for (v, &d) in dist.iter().enumerate() {
        let (mut c, mut b) = (0u64, 0u64);
        for &w in graph.neighbors(v) {
            let dw = dist[w as usize];
            if dw + 1 == d {
                c += 1;
            } else if dw == d + 1 {
                b += 1;
            }
        }
        match levels[d as usize] {
            None => levels[d as usize] = Some((c, b)),
            Some(x) if x != (c, b) => {
                return Err(format!(
                    "from base {base}: vertex {v} at distance {d} has (c, b) = ({c}, {b}), expected {x:?}"
                ))
            }
            _ => {}
        }
    }
    Ok(levels.into_iter().map(Option::unwrap).collect())
}

/// Distance-regularity by BFS from every vertex in `bases`, or from all
/// vertices when `bases` is `None`.
pub fn check_distance_regular_from(graph: &Graph, bases: Option<&[usize]>) -> DrgReport {
    let all: Vec<usize>;
    let bases = match bases {
        Some(b) => b,
        None => {
            all = (0..graph.vertex_count()).collect();
            &all
        }
    };
    let valency = graph.valency();
    let results: Vec<_> = bases.par_iter().map(|&b| (b, local_array(graph, b))).collect();
    let mut reference: Option<(usize, Vec<(u64, u64)>)> = None;
    let mut witness = None;
    if valency.is_none() {
        witness = Some("graph is not regular".to_string());
    }
    for (b, r) in results {
        match r {
            Err(e) => {
                witness.get_or_insert(e);
            }
            Ok(levels) => match &reference {
                None => reference = Some((b, levels)),
                Some((b0, l0)) if *l0 != levels => {
                    witness.get_or_insert(format!("bases {b0} and {b} see different arrays"));
                }
                _ => {}
            },
        }
    }
    let array = reference.as_ref().map(|(_, levels)| {
        let d = levels.len() - 1;
        IntersectionArray::new(
            (0..d).map(|i| levels[i].1).collect(),
            (1..=d).map(|i| levels[i].0).collect(),
            valency.unwrap_or(0) as u64,
        )
    });
    DrgReport {
        distance_regular: witness.is_none(),
        diameter: reference.map_or(0, |(_, l)| l.len() - 1),
        array,
        bases_checked: bases.len(),
        witness,
    }
}

pub fn check_distance_regular(graph: &Graph) -> DrgReport {
    check_distance_regular_from(graph, None)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FibrePartition {
    pub applicable: bool,
    pub antipodal: bool,
    pub fibres: Vec<Vec<u32>>,
    pub fibre_size: usize,
    /// (x, y, z) with y, z at distance D from x but not from each other.
    pub witness: Option<(u32, u32, u32)>,
}

impl FibrePartition {
    fn not_applicable() -> Self {
        FibrePartition {
            applicable: false,
            antipodal: false,
            fibres: Vec::new(),
            fibre_size: 0,
            witness: None,
        }
    }
}

/// Checks that "equal or at distance D" is an equivalence relation with
/// classes of one size.
pub fn check_antipodal(graph: &Graph, diameter: usize) -> FibrePartition {
    if diameter < 2 {
        return FibrePartition::not_applicable();
    }
    let n = graph.vertex_count();
    let far: Vec<Vec<u32>> = (0..n)
        .into_par_iter()
        .map(|v| {
            let dist = graph.distances_from(v);
            let mut f: Vec<u32> = dist
                .iter()
                .enumerate()
                .filter(|&(w, &d)| d as usize == diameter || w == v)
                .map(|(w, _)| w as u32)
                .collect();
            f.sort_unstable();
            f
        })
        .collect();
    let mut fibre_of = vec![u32::MAX; n];
    let mut fibres = Vec::new();
    let mut witness = None;
    for v in 0..n {
        if fibre_of[v] != u32::MAX {
            continue;
        }
        let f = &far[v];
        for &y in f {
            if far[y as usize] != *f && witness.is_none() {
                let z = f
                    .iter()
                    .copied()
                    .find(|z| far[y as usize].binary_search(z).is_err())
                    .unwrap_or(v as u32);
                witness = Some((v as u32, y, z));
            }
            fibre_of[y as usize] = fibres.len() as u32;
        }
        fibres.push(f.clone());
    }
    let size = fibres.first().map_or(0, Vec::len);
    let equal = fibres.iter().all(|f| f.len() == size);
    FibrePartition {
        applicable: true,
        antipodal: witness.is_none() && equal,
        fibres,
        fibre_size: size,
        witness,
    }
}

/// Same verdict for a Cayley graph on an elementary abelian group: the fibre
/// of 0 must be closed under addition, and fibres are its cosets.
pub fn check_antipodal_cayley(cg: &CosetGraph, diameter: usize) -> FibrePartition {
    if diameter < 2 {
        return FibrePartition::not_applicable();
    }
    let dist = cg.graph.distances_from(0);
    let f0: Vec<u32> = (0..dist.len() as u32)
        .filter(|&w| w == 0 || dist[w as usize] as usize == diameter)
        .collect();
    let mut witness = None;
    'outer: for &y in &f0 {
        for &z in &f0 {
            if f0.binary_search(&(y ^ z)).is_err() {
                witness = Some((0, y, z));
                break 'outer;
            }
        }
    }
    if witness.is_some() {
        return FibrePartition {
            applicable: true,
            antipodal: false,
            fibres: Vec::new(),
            fibre_size: f0.len(),
            witness,
        };
    }
    let n = cg.graph.vertex_count();
    let mut seen = vec![false; n];
    let mut fibres = Vec::new();
    for v in 0..n as u32 {
        if seen[v as usize] {
            continue;
        }
        let mut f: Vec<u32> = f0.iter().map(|&x| x ^ v).collect();
        f.sort_unstable();
        for &x in &f {
            seen[x as usize] = true;
        }
        fibres.push(f);
    }
    FibrePartition {
        applicable: true,
        antipodal: true,
        fibre_size: f0.len(),
        fibres,
        witness: None,
    }
}

/// Antipodal quotient: one vertex per fibre, adjacent when some edge joins them.
pub fn fold(graph: &Graph, fibres: &FibrePartition) -> Result<Graph> {
    if !fibres.antipodal {
        return Err(Error::Internal("fold needs an antipodal partition".into()));
    }
    let mut block = vec![u32::MAX; graph.vertex_count()];
    for (i, f) in fibres.fibres.iter().enumerate() {
        for &v in f {
            block[v as usize] = i as u32;
        }
    }
    let mut adj: Vec<BTreeSet<u32>> = vec![BTreeSet::new(); fibres.fibres.len()];
    for (a, b) in graph.edges() {
        let (x, y) = (block[a as usize], block[b as usize]);
        if x != y {
            adj[x as usize].insert(y);
            adj[y as usize].insert(x);
        }
    }
    Graph::from_adjacency(adj.into_iter().map(|s| s.into_iter().collect()).collect())
}

/// The linear map from fine syndromes to coarse syndromes, one mask per
/// coarse parity row.
#[derive(Clone, Debug)]
pub struct SyndromeProjection {
    masks: Vec<u64>,
}

impl SyndromeProjection {
    /// Requires fine ⊆ coarse: every coarse parity row is a combination of
    /// fine rows.
    pub fn new(fine: &LinearCode, coarse: &LinearCode) -> Result<Self> {
        if fine.length() != coarse.length() {
            return Err(Error::LengthMismatch {
                expected: coarse.length(),
                got: fine.length(),
            });
        }
        let fine_rows = fine.parity().rows();
        let masks = coarse
            .parity()
            .rows()
            .iter()
            .enumerate()
            .map(|(k, row)| {
                let coeffs = solve_in_row_space(fine_rows, row).ok_or_else(|| {
                    Error::NotNested(format!("coarse parity row {k} is not in the fine row space"))
                })?;
                Ok(coeffs.iter_ones().fold(0u64, |m, j| m | 1 << j))
            })
            .collect::<Result<_>>()?;
        Ok(SyndromeProjection { masks })
    }

    pub fn apply(&self, s: u64) -> u64 {
        self.masks
            .iter()
            .enumerate()
            .fold(0, |acc, (k, &m)| acc | (((s & m).count_ones() as u64) & 1) << k)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SyndromeProjection) -> SyndromeProjection {
        SyndromeProjection {
            masks: other
                .masks
                .iter()
                .map(|&m| {
                    (0..self.masks.len())
                        .filter(|&k| m >> k & 1 == 1)
                        .fold(0, |acc, k| acc ^ self.masks[k])
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoverMap {
    pub projection: Vec<u32>,
    pub fibre_size: usize,
    pub expected_fibre_size: usize,
    pub is_cover: bool,
    pub witness_vertex: Option<u32>,
}

/// Projects fine cosets onto the coarse cosets containing them and checks the
/// neighbourhood of every vertex maps bijectively onto its image's.
pub fn verify_cover(
    fine: &CosetGraph,
    coarse: &CosetGraph,
    fine_code: &LinearCode,
    coarse_code: &LinearCode,
) -> Result<CoverMap> {
    let proj = SyndromeProjection::new(fine_code, coarse_code)?;
    let projection: Vec<u32> = (0..fine.graph.vertex_count() as u64)
        .map(|s| proj.apply(s) as u32)
        .collect();
    let mut preimages = vec![0usize; coarse.graph.vertex_count()];
    for &p in &projection {
        preimages[p as usize] += 1;
    }
    let fibre_size = preimages[0];
    let uniform = preimages.iter().all(|&c| c == fibre_size);
    let expected = fine.graph.vertex_count() / coarse.graph.vertex_count();
    let witness_vertex = (0..fine.graph.vertex_count()).find(|&v| {
        let mut img: Vec<u32> = fine
            .graph
            .neighbors(v)
            .iter()
            .map(|&w| projection[w as usize])
            .collect();
        img.sort_unstable();
        img.as_slice() != coarse.graph.neighbors(projection[v] as usize)
    });
    Ok(CoverMap {
        is_cover: uniform && witness_vertex.is_none(),
        fibre_size,
        expected_fibre_size: expected,
        witness_vertex: witness_vertex.map(|v| v as u32),
        projection,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LemmaVerdict {
    Matches,
    Differs,
    NotApplicable,
}

/// For a diameter-3 antipodal graph folding to K_N with fibre size r: the
/// array must be (N-1, (r-1)c_2, 1; 1, c_2, N-1).
pub fn verify_lemma_cover_array(
    drg: &DrgReport,
    fibres: &FibrePartition,
    folded: Option<&Graph>,
) -> LemmaVerdict {
    let (Some(array), Some(folded)) = (&drg.array, folded) else {
        return LemmaVerdict::NotApplicable;
    };
    if !drg.distance_regular || drg.diameter != 3 || !fibres.antipodal || !folded.is_complete() {
        return LemmaVerdict::NotApplicable;
    }
    let nn = folded.vertex_count() as u64;
    let r = fibres.fibre_size as u64;
    let c2 = array.c[1];
    let want = IntersectionArray::new(vec![nn - 1, (r - 1) * c2, 1], vec![1, c2, nn - 1], nn - 1);
    if *array == want {
        LemmaVerdict::Matches
    } else {
        LemmaVerdict::Differs
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EmbeddingReport {
    pub coarse_edges: usize,
    pub preserved_edges: usize,
    pub created_edges: usize,
    pub induced_subgraph: bool,
}

/// Maps each syndrome of the coarser graph to the same integer (zero
/// extension on the extra syndrome bits) and compares adjacency.
pub fn check_embedding(coarse: &CosetGraph, fine: &CosetGraph) -> Result<EmbeddingReport> {
    if coarse.syndrome_bits > fine.syndrome_bits {
        return Err(Error::NotNested("coarse graph has more syndrome bits".into()));
    }
    let n = coarse.graph.vertex_count();
    let mut preserved = 0;
    let mut created = 0;
    for a in 0..n {
        for b in (a + 1)..n {
            match (coarse.graph.has_edge(a, b), fine.graph.has_edge(a, b)) {
                (true, true) => preserved += 1,
                (false, true) => created += 1,
                _ => {}
            }
        }
    }
    let coarse_edges = coarse.graph.edge_count();
    Ok(EmbeddingReport {
        coarse_edges,
        preserved_edges: preserved,
        created_edges: created,
        induced_subgraph: preserved == coarse_edges && created == 0,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphFormat {
    Graph6,
    EdgeList,
    Json,
}

impl GraphFormat {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "graph6" | "g6" => Ok(GraphFormat::Graph6),
            "edge-list" | "edges" => Ok(GraphFormat::EdgeList),
            "json" => Ok(GraphFormat::Json),
            other => Err(Error::UnsupportedFormat(other.to_string())),
        }
    }

    pub fn extension(self) -> &'static str {
        match self {
            GraphFormat::Graph6 => "g6",
            GraphFormat::EdgeList => "edges",
            GraphFormat::Json => "json",
        }
    }
}

fn graph6_size(n: usize, out: &mut Vec<u8>) -> Result<()> {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else if n < 1 << 36 {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        return Err(Error::TooLarge {
            what: "graph6 vertex count",
            size: n,
            limit: (1 << 36) - 1,
        });
    }
    Ok(())
}

pub fn to_graph6(graph: &Graph) -> Result<String> {
    let n = graph.vertex_count();
    let mut out = Vec::new();
    graph6_size(n, &mut out)?;
    let (mut acc, mut filled) = (0u8, 0);
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | graph.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 is printable ASCII"))
}

pub fn parse_graph6(text: &str) -> Result<Graph> {
    let bytes: Vec<u8> = text.trim_end().bytes().collect();
    let bad = |why: &str| Error::Parse(format!("graph6: {why}"));
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(bad("byte outside 63..=126"));
    }
    let val = |b: u8| (b - 63) as usize;
    let (n, rest) = match bytes.as_slice() {
        [126, 126, r @ ..] if r.len() >= 6 => (r[..6].iter().fold(0, |a, &b| a << 6 | val(b)), &r[6..]),
        [126, r @ ..] if r.len() >= 3 => (r[..3].iter().fold(0, |a, &b| a << 6 | val(b)), &r[3..]),
        [b, r @ ..] if *b != 126 => (val(*b), r),
        _ => return Err(bad("truncated header")),
    };
    let pairs = n * n.saturating_sub(1) / 2;
    if rest.len() != pairs.div_ceil(6) {
        return Err(bad("wrong body length"));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if val(rest[k / 6]) >> (5 - k % 6) & 1 == 1 {
                edges.push((i as u32, j as u32));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, &edges)
}

#[derive(Serialize, Deserialize)]
struct JsonGraph {
    vertices: usize,
    edges: usize,
    adjacency: Vec<Vec<u32>>,
}

/// Vertices in syndrome integer order for all formats.
pub fn export_graph(graph: &Graph, format: GraphFormat) -> Result<String> {
    match format {
        GraphFormat::Graph6 => Ok(to_graph6(graph)? + "\n"),
        GraphFormat::EdgeList => {
            let mut s = format!(
                "# vertices {} edges {}\n",
                graph.vertex_count(),
                graph.edge_count()
            );
            for (a, b) in graph.edges() {
                writeln!(s, "{a} {b}").expect("write to String");
            }
            Ok(s)
        }
        GraphFormat::Json => Ok(serde_json::to_string(&JsonGraph {
            vertices: graph.vertex_count(),
            edges: graph.edge_count(),
            adjacency: graph.adj.clone(),
        })? + "\n"),
    }
}

pub fn import_graph(text: &str, format: GraphFormat) -> Result<Graph> {
    match format {
        GraphFormat::Graph6 => parse_graph6(text),
        GraphFormat::Json => {
            let j: JsonGraph = serde_json::from_str(text)?;
            Graph::from_adjacency(j.adjacency)
        }
        GraphFormat::EdgeList => {
            let mut n = None;
            let mut edges = Vec::new();
            for line in text.lines() {
                let toks: Vec<&str> = line.split_whitespace().collect();
                match toks.as_slice() {
                    ["#", "vertices", v, "edges", _] => {
                        n = Some(v.parse().map_err(|_| Error::Parse(line.into()))?)
                    }
                    [a, b] => edges.push((
                        a.parse().map_err(|_| Error::Parse(line.into()))?,
                        b.parse().map_err(|_| Error::Parse(line.into()))?,
                    )),
                    [] => {}
                    _ => return Err(Error::Parse(format!("edge list line {line:?}"))),
                }
            }
            Graph::from_edges(n.ok_or_else(|| Error::Parse("missing header".into()))?, &edges)
        }
    }
}

/// Whether all coarse parity rows are a prefix of the fine rows; in that case
/// projection is truncation to the low syndrome bits.
pub fn is_prefix_nested(fine: &LinearCode, coarse: &LinearCode) -> bool {
    let (f, c) = (fine.parity().rows(), coarse.parity().rows());
    c.len() <= f.len() && f[..c.len()] == *c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{build_chain, extend_code, SubspaceChoice};
    use crate::field::FieldContext;
    use crate::regularity::{enumerate_cosets, expected_code_array, verify_completely_regular};
    use std::sync::Arc;

    fn chain(m: usize) -> Vec<LinearCode> {
        let ctx = Arc::new(FieldContext::new(m).unwrap());
        build_chain(ctx, &SubspaceChoice::standard(m / 2)).unwrap()
    }

    #[test]
    fn graph_sizes() {
        let ch = chain(4);
        let g2 = build_coset_graph(&ch[0]).unwrap();
        assert_eq!((g2.graph.vertex_count(), g2.graph.valency()), (64, Some(15)));
        assert_eq!(g2.graph.edge_count(), 480);
        let g0 = build_coset_graph(&ch[2]).unwrap();
        assert!(g0.graph.is_complete());
        assert_eq!(g0.graph.vertex_count(), 16);
        let ch6 = chain(6);
        let e3 = build_coset_graph(&extend_code(&ch6[0]).unwrap()).unwrap();
        assert_eq!((e3.graph.vertex_count(), e3.graph.valency()), (1024, Some(64)));
    }

    #[test]
    fn drg_arrays_match_codes() {
        let ch = chain(4);
        let g2 = build_coset_graph(&ch[0]).unwrap();
        let rep = check_distance_regular(&g2.graph);
        assert!(rep.distance_regular);
        assert_eq!(rep.diameter, 3);
        assert_eq!(rep.array.unwrap().to_string(), "(15, 12, 1; 1, 4, 15)");
        let e1 = extend_code(&ch[1]).unwrap();
        let rep = check_distance_regular(&build_coset_graph(&e1).unwrap().graph);
        assert_eq!(rep.diameter, 4);
        assert_eq!(rep.array.unwrap().to_string(), "(16, 15, 8, 1; 1, 8, 15, 16)");
        let rep = check_distance_regular(&Graph::complete(16));
        assert_eq!(
            (rep.diameter, rep.array.unwrap().to_string()),
            (1, "(15; 1)".to_string())
        );
        for m in [4, 6] {
            for code in chain(m) {
                let g = build_coset_graph(&code).unwrap();
                let rep = check_distance_regular(&g.graph);
                let cr = verify_completely_regular(&code, &enumerate_cosets(&code).unwrap());
                assert_eq!(rep.array.unwrap(), cr.array);
                if code.level() > 0 {
                    assert_eq!(cr.array, expected_code_array(m, code.level()));
                }
            }
        }
    }

    #[test]
    fn disconnected_and_irregular() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let rep = check_distance_regular(&g);
        assert!(!rep.distance_regular);
        assert!(rep.witness.unwrap().contains("disconnected"));
        let path = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(!check_distance_regular(&path).distance_regular);
    }

    #[test]
    fn antipodal_and_fold() {
        let ch = chain(4);
        let g2 = build_coset_graph(&ch[0]).unwrap();
        let f = check_antipodal(&g2.graph, 3);
        assert!(f.antipodal);
        assert_eq!(f.fibre_size, 4);
        let fc = check_antipodal_cayley(&g2, 3);
        assert!(fc.antipodal);
        let mut a = f.fibres.clone();
        let mut b = fc.fibres.clone();
        a.sort();
        b.sort();
        assert_eq!(a, b);
        let folded = fold(&g2.graph, &f).unwrap();
        assert!(folded.is_complete());
        assert_eq!(folded.vertex_count(), 16);
        let rep = check_distance_regular(&g2.graph);
        assert_eq!(
            verify_lemma_cover_array(&rep, &f, Some(&folded)),
            LemmaVerdict::Matches
        );

        let ch6 = chain(6);
        let g1 = build_coset_graph(&ch6[2]).unwrap();
        let f = check_antipodal(&g1.graph, 3);
        assert_eq!((f.antipodal, f.fibre_size), (true, 2));
        let folded = fold(&g1.graph, &f).unwrap();
        assert!(folded.is_complete() && folded.vertex_count() == 64);
        let rep = check_distance_regular(&g1.graph);
        assert_eq!(rep.array.as_ref().unwrap().to_string(), "(63, 32, 1; 1, 32, 63)");
        assert_eq!(
            verify_lemma_cover_array(&rep, &f, Some(&folded)),
            LemmaVerdict::Matches
        );

        let e3 = build_coset_graph(&extend_code(&ch6[0]).unwrap()).unwrap();
        let f = check_antipodal_cayley(&e3, 4);
        assert_eq!((f.antipodal, f.fibre_size), (true, 8));
    }

    #[test]
    fn non_antipodal_cases() {
        let c6 = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]).unwrap();
        assert!(check_antipodal(&c6, 3).antipodal);
        let c5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let f = check_antipodal(&c5, 2);
        assert!(!f.antipodal);
        assert!(f.witness.is_some());
        let rep = check_distance_regular(&c5);
        assert_eq!(
            verify_lemma_cover_array(&rep, &f, None),
            LemmaVerdict::NotApplicable
        );
        assert!(!check_antipodal(&Graph::complete(4), 1).applicable);
        // trivial fibres fold to an isomorphic graph
        let triv = FibrePartition {
            applicable: true,
            antipodal: true,
            fibres: (0..4).map(|v| vec![v]).collect(),
            fibre_size: 1,
            witness: None,
        };
        assert_eq!(fold(&Graph::complete(4), &triv).unwrap(), Graph::complete(4));
    }

    #[test]
    fn covers() {
        let ch = chain(4);
        let gs: Vec<_> = ch.iter().map(|c| build_coset_graph(c).unwrap()).collect();
        let c21 = verify_cover(&gs[0], &gs[1], &ch[0], &ch[1]).unwrap();
        assert!(c21.is_cover);
        assert_eq!(c21.fibre_size, 2);
        let c20 = verify_cover(&gs[0], &gs[2], &ch[0], &ch[2]).unwrap();
        assert!(c20.is_cover);
        assert_eq!(c20.fibre_size, 4);
        let c10 = verify_cover(&gs[1], &gs[2], &ch[1], &ch[2]).unwrap();
        for s in 0..64 {
            assert_eq!(c10.projection[c21.projection[s] as usize], c20.projection[s]);
        }
        let p21 = SyndromeProjection::new(&ch[0], &ch[1]).unwrap();
        let p10 = SyndromeProjection::new(&ch[1], &ch[2]).unwrap();
        let p20 = SyndromeProjection::new(&ch[0], &ch[2]).unwrap();
        let composed = p21.then(&p10);
        for s in 0..64 {
            assert_eq!(composed.apply(s), p20.apply(s));
            assert_eq!(p20.apply(s), s & 0xf);
        }
        assert!(is_prefix_nested(&ch[0], &ch[1]));
        assert!(matches!(
            SyndromeProjection::new(&ch[1], &ch[0]),
            Err(Error::NotNested(_))
        ));

        let ch6 = chain(6);
        let e3 = extend_code(&ch6[0]).unwrap();
        let e1 = extend_code(&ch6[2]).unwrap();
        let c = verify_cover(
            &build_coset_graph(&e3).unwrap(),
            &build_coset_graph(&e1).unwrap(),
            &e3,
            &e1,
        )
        .unwrap();
        assert!(c.is_cover);
        assert_eq!(c.fibre_size, 4);
    }

    #[test]
    fn embedding_is_not_induced() {
        let ch = chain(4);
        let g1 = build_coset_graph(&ch[1]).unwrap();
        let g2 = build_coset_graph(&ch[0]).unwrap();
        let rep = check_embedding(&g1, &g2).unwrap();
        assert_eq!(rep.coarse_edges, 32 * 15 / 2);
        assert!(!rep.induced_subgraph);
        assert!(rep.preserved_edges < rep.coarse_edges);
    }

    #[test]
    fn graph6_vectors() {
        assert_eq!(to_graph6(&Graph::complete(4)).unwrap(), "C~");
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(to_graph6(&g).unwrap(), "DQc");
        assert_eq!(parse_graph6("DQc").unwrap(), g);
        assert_eq!(to_graph6(&Graph::from_edges(0, &[]).unwrap()).unwrap(), "?");
        let big = Graph::complete(63);
        let s = to_graph6(&big).unwrap();
        assert!(s.starts_with("~??~"));
        assert_eq!(parse_graph6(&s).unwrap(), big);
        assert!(parse_graph6("C~~").is_err());
    }

    #[test]
    fn export_round_trips() {
        let ch = chain(4);
        let g = build_coset_graph(&ch[0]).unwrap().graph;
        for f in [GraphFormat::Graph6, GraphFormat::EdgeList, GraphFormat::Json] {
            let text = export_graph(&g, f).unwrap();
            assert_eq!(export_graph(&g, f).unwrap(), text);
            assert_eq!(import_graph(&text, f).unwrap(), g);
        }
        assert!(matches!(
            GraphFormat::parse("dot"),
            Err(Error::UnsupportedFormat(_))
        ));
    }

    #[test]
    fn too_large_rejected() {
        let ctx = Arc::new(FieldContext::new(10).unwrap());
        let code = crate::codes::build_cu(ctx).unwrap();
        assert!(matches!(build_coset_graph(&code), Err(Error::TooLarge { .. })));
    }
}
