use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{build_closed_quipu, build_dagger, build_open_quipu, decode_graph6, Graph};
use crate::error::{Error, Result};

/// Parameters of the open quipu `P_(k0,…,k_{r+1})^(m0,…,m_r)`.
///
/// `k[0]` and `k[r+1]` are the end pendent lengths, `k[1..=r]` count the
/// internal vertices of the internal paths, and `m[i]` is the pendent length
/// at junction `i`. With `r = 0` the graph is a T-shape whose three legs are
/// `k[0]`, `m[0]`, `k[1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OpenQuipuSpec {
    k: Vec<usize>,
    m: Vec<usize>,
}

impl OpenQuipuSpec {
    /// Validates lengths and positivity, then normalizes so that the
    /// middle leg at each end junction is no longer than the end leg.
    pub fn new(k: Vec<usize>, m: Vec<usize>) -> Result<Self> {
        if m.is_empty() {
            return Err(Error::InvalidSpec(
                "open quipu needs at least one junction".into(),
            ));
        }
        if k.len() != m.len() + 1 {
            return Err(Error::InvalidSpec(format!(
                "open quipu with {} junctions needs {} k-entries, got {}",
                m.len(),
                m.len() + 1,
                k.len()
            )));
        }
        if k[0] == 0 || k[k.len() - 1] == 0 {
            return Err(Error::InvalidSpec(
                "end pendent paths must have length >= 1".into(),
            ));
        }
        if m.contains(&0) {
            return Err(Error::InvalidSpec(
                "middle pendent paths must have length >= 1".into(),
            ));
        }
        let mut s = OpenQuipuSpec { k, m };
        s.normalize();
        Ok(s)
    }

    /// T-shape with legs `a`, `b`, `c`.
    pub fn t_shape(a: usize, b: usize, c: usize) -> Result<Self> {
        OpenQuipuSpec::new(vec![a, c], vec![b])
    }

    /// The special tree `P_{m,k,r}`; for `r = 1` the single internal path
    /// carries `k − 2` internal vertices, so `k ≥ 2` is required there.
    pub fn special(m: usize, k: usize, r: usize) -> Result<Self> {
        if m == 0 || k == 0 || r == 0 {
            return Err(Error::InvalidSpec(format!(
                "P_(m,k,r) needs m,k,r >= 1, got ({m},{k},{r})"
            )));
        }
        if r == 1 && k < 2 {
            return Err(Error::InvalidSpec("P_(m,k,1) needs k >= 2".into()));
        }
        let mut ks = vec![m + 1];
        for i in 1..=r {
            ks.push(k - usize::from(i == 1) - usize::from(i == r));
        }
        ks.push(m + 1);
        let mut ms = vec![m; r + 1];
        ms[0] = m + 1;
        ms[r] = m + 1;
        OpenQuipuSpec::new(ks, ms)
    }

    /// The `m`-Laundry graph with `r` internal paths.
    pub fn laundry(m: usize, r: usize) -> Result<Self> {
        let mut ks = vec![0; r + 2];
        ks[0] = m + 1;
        ks[r + 1] = m + 1;
        let mut ms = vec![m; r + 1];
        ms[0] = m + 1;
        ms[r] = m + 1;
        OpenQuipuSpec::new(ks, ms)
    }

    fn normalize(&mut self) {
        let r = self.r();
        if r == 0 {
            let mut legs = [self.k[0], self.m[0], self.k[1]];
            legs.sort_unstable();
            self.k = vec![legs[1], legs[2]];
            self.m = vec![legs[0]];
            return;
        }
        if self.m[0] > self.k[0] {
            std::mem::swap(&mut self.m[0], &mut self.k[0]);
        }
        if self.m[r] > self.k[r + 1] {
            std::mem::swap(&mut self.m[r], &mut self.k[r + 1]);
        }
    }

    /// Number of internal paths.
    pub fn r(&self) -> usize {
        self.m.len() - 1
    }

    pub fn k(&self) -> &[usize] {
        &self.k
    }

    pub fn m(&self) -> &[usize] {
        &self.m
    }

    /// Vertex count `Σk + Σm + r + 1`.
    pub fn order(&self) -> usize {
        self.k.iter().sum::<usize>() + self.m.iter().sum::<usize>() + self.r() + 1
    }

    pub fn reversed(&self) -> Self {
        let mut k = self.k.clone();
        let mut m = self.m.clone();
        k.reverse();
        m.reverse();
        OpenQuipuSpec { k, m }
    }

    /// The smaller of the spec and its reversal.
    pub fn canonical(&self) -> Self {
        let rev = self.reversed();
        if rev < *self {
            rev
        } else {
            self.clone()
        }
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonical()
    }

    pub fn build(&self) -> Graph {
        build_open_quipu(self)
    }
}

impl fmt::Display for OpenQuipuSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "open {} / {}", join(&self.k), join(&self.m))
    }
}

/// Parameters of the closed quipu `C_(k1,…,k_r)^(m1,…,m_r)`.
///
/// Junction `i` carries a pendent path of length `m[i]` (absent when zero)
/// and is followed around the cycle by `k[i]` internal vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClosedQuipuSpec {
    k: Vec<usize>,
    m: Vec<usize>,
}

impl ClosedQuipuSpec {
    pub fn new(k: Vec<usize>, m: Vec<usize>) -> Result<Self> {
        if k.is_empty() {
            return Err(Error::InvalidSpec("closed quipu needs r >= 1".into()));
        }
        if k.len() != m.len() {
            return Err(Error::InvalidSpec(format!(
                "closed quipu needs equally many k- and m-entries, got {} and {}",
                k.len(),
                m.len()
            )));
        }
        let s = ClosedQuipuSpec { k, m };
        if s.cycle_len() < 3 {
            return Err(Error::InvalidSpec(format!(
                "cycle length {} is below 3",
                s.cycle_len()
            )));
        }
        Ok(s)
    }

    /// The bare cycle `C_n`.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidSpec(format!("cycle length {n} is below 3")));
        }
        ClosedQuipuSpec::new(vec![n - 1], vec![0])
    }

    /// `C_{m,k,r} = C_(k,…,k)^(m,…,m)` with `r` junctions.
    pub fn uniform(m: usize, k: usize, r: usize) -> Result<Self> {
        ClosedQuipuSpec::new(vec![k; r], vec![m; r])
    }

    /// The `m`-Urchin graph with `r` junctions.
    pub fn urchin(m: usize, r: usize) -> Result<Self> {
        ClosedQuipuSpec::uniform(m, 0, r)
    }

    pub fn r(&self) -> usize {
        self.k.len()
    }

    pub fn k(&self) -> &[usize] {
        &self.k
    }

    pub fn m(&self) -> &[usize] {
        &self.m
    }

    pub fn cycle_len(&self) -> usize {
        self.r() + self.k.iter().sum::<usize>()
    }

    /// Vertex count `r + Σm + Σk`.
    pub fn order(&self) -> usize {
        self.cycle_len() + self.m.iter().sum::<usize>()
    }

    pub fn is_cycle(&self) -> bool {
        self.m.iter().all(|&x| x == 0)
    }

    /// Folds junctions without a pendent path into the neighbouring internal
    /// paths. A spec with no pendent paths at all becomes the bare cycle.
    pub fn collapsed(&self) -> Self {
        let r = self.r();
        let Some(first) = (0..r).find(|&i| self.m[i] > 0) else {
            return ClosedQuipuSpec {
                k: vec![self.cycle_len() - 1],
                m: vec![0],
            };
        };
        let mut k = Vec::new();
        let mut m = Vec::new();
        for step in 0..r {
            let i = (first + step) % r;
            if self.m[i] > 0 {
                m.push(self.m[i]);
                k.push(self.k[i]);
            } else {
                *k.last_mut().expect("first junction has a pendent path") += 1 + self.k[i];
            }
        }
        ClosedQuipuSpec { k, m }
    }

    /// Junction order reversed around the cycle, keeping the first junction.
    pub fn reflected(&self) -> Self {
        let r = self.r();
        let m = (0..r).map(|i| self.m[(r - i) % r]).collect();
        let k = (0..r).map(|i| self.k[r - 1 - i]).collect();
        ClosedQuipuSpec { k, m }
    }

    pub fn rotated(&self, by: usize) -> Self {
        let r = self.r();
        let k = (0..r).map(|i| self.k[(i + by) % r]).collect();
        let m = (0..r).map(|i| self.m[(i + by) % r]).collect();
        ClosedQuipuSpec { k, m }
    }

    fn interleaved(&self) -> Vec<usize> {
        self.m
            .iter()
            .zip(&self.k)
            .flat_map(|(&m, &k)| [m, k])
            .collect()
    }

    /// Collapsed form minimized over rotations and reflection of the
    /// interleaved sequence `(m1, k1, m2, k2, …)`.
    pub fn canonical(&self) -> Self {
        let base = self.collapsed();
        let refl = base.reflected();
        let mut best = base.clone();
        let mut best_key = best.interleaved();
        for cand in [&base, &refl] {
            for by in 0..cand.r() {
                let rot = cand.rotated(by);
                let key = rot.interleaved();
                if key < best_key {
                    best_key = key;
                    best = rot;
                }
            }
        }
        best
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonical()
    }

    pub fn build(&self) -> Graph {
        build_closed_quipu(self)
    }
}

impl fmt::Display for ClosedQuipuSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "closed {} / {}", join(&self.k), join(&self.m))
    }
}

fn join(xs: &[usize]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Any graph nameable on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphSpec {
    Open(OpenQuipuSpec),
    Closed(ClosedQuipuSpec),
    Dagger(usize),
    Cycle(usize),
    Path(usize),
    Graph6(String),
}

impl GraphSpec {
    pub fn build(&self) -> Result<Graph> {
        match self {
            GraphSpec::Open(s) => Ok(s.build()),
            GraphSpec::Closed(s) => Ok(s.build()),
            GraphSpec::Dagger(t) => Ok(build_dagger(*t)),
            GraphSpec::Cycle(n) => Graph::cycle(*n),
            GraphSpec::Path(n) => {
                if *n == 0 {
                    return Err(Error::InvalidSpec("path needs at least one vertex".into()));
                }
                Ok(Graph::path(*n))
            }
            GraphSpec::Graph6(line) => decode_graph6(line).map_err(|e| match e {
                Error::Graph6 { message, .. } => Error::parse(line.clone(), message),
                other => other,
            }),
        }
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSpec::Open(s) => s.fmt(f),
            GraphSpec::Closed(s) => s.fmt(f),
            GraphSpec::Dagger(t) => write!(f, "dagger {t}"),
            GraphSpec::Cycle(n) => write!(f, "cycle {n}"),
            GraphSpec::Path(n) => write!(f, "path {n}"),
            GraphSpec::Graph6(s) => write!(f, "g6:{s}"),
        }
    }
}

fn parse_count(tok: &str) -> Result<usize> {
    tok.parse::<usize>()
        .map_err(|_| Error::parse(tok, "expected a non-negative integer"))
}

fn parse_list(text: &str) -> Result<Vec<usize>> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::parse(text, "empty parameter list"));
    }
    text.split(',').map(|t| parse_count(t.trim())).collect()
}

fn split_lists(rest: &str, whole: &str) -> Result<(Vec<usize>, Vec<usize>)> {
    let Some((ks, ms)) = rest.split_once('/') else {
        return Err(Error::parse(whole, "expected `k-list / m-list`"));
    };
    Ok((parse_list(ks)?, parse_list(ms)?))
}

impl FromStr for GraphSpec {
    type Err = Error;

    /// Grammar: `open K / M`, `closed K / M`, `dagger T`, `cycle N`,
    /// `path N` or `g6:LINE`, with `K`, `M` comma-separated integers.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(line) = s.strip_prefix("g6:") {
            return Ok(GraphSpec::Graph6(line.trim().to_string()));
        }
        let (head, rest) = s.split_once(char::is_whitespace).unwrap_or((s, ""));
        let rest = rest.trim();
        match head {
            "open" => {
                let (k, m) = split_lists(rest, s)?;
                Ok(GraphSpec::Open(OpenQuipuSpec::new(k, m)?))
            }
            "closed" => {
                let (k, m) = split_lists(rest, s)?;
                Ok(GraphSpec::Closed(ClosedQuipuSpec::new(k, m)?))
            }
            "dagger" => Ok(GraphSpec::Dagger(parse_count(rest)?)),
            "cycle" => Ok(GraphSpec::Cycle(parse_count(rest)?)),
            "path" => Ok(GraphSpec::Path(parse_count(rest)?)),
            _ => Err(Error::parse(
                head,
                "unknown graph kind (open, closed, dagger, cycle, path, g6:)",
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn open_normalization_swaps_end_legs() {
        let s = OpenQuipuSpec::new(vec![1, 2, 3], vec![2, 1]).unwrap();
        assert_eq!(s.k(), &[2, 2, 3]);
        assert_eq!(s.m(), &[1, 1]);
        let t = OpenQuipuSpec::t_shape(3, 1, 2).unwrap();
        assert_eq!((t.k(), t.m()), (&[2, 3][..], &[1][..]));
    }

    #[test]
    fn open_rejects_bad_shapes() {
        assert!(OpenQuipuSpec::new(vec![1, 1], vec![1, 1]).is_err());
        assert!(OpenQuipuSpec::new(vec![0, 1, 1], vec![1, 1]).is_err());
        assert!(OpenQuipuSpec::new(vec![1, 1, 1], vec![1, 0]).is_err());
        assert!(OpenQuipuSpec::special(1, 1, 1).is_err());
    }

    #[test]
    fn special_tree_layout() {
        let s = OpenQuipuSpec::special(2, 7, 3).unwrap();
        assert_eq!(s.k(), &[3, 6, 7, 6, 3]);
        assert_eq!(s.m(), &[3, 2, 2, 3]);
        let one = OpenQuipuSpec::special(1, 4, 1).unwrap();
        assert_eq!(one.k(), &[2, 2, 2]);
        assert_eq!(one.m(), &[2, 2]);
    }

    #[test]
    fn open_order_formula() {
        let h = OpenQuipuSpec::new(vec![1, 0, 1], vec![1, 1]).unwrap();
        assert_eq!(h.order(), 6);
    }

    #[test]
    fn closed_collapse_and_canonical() {
        let s = ClosedQuipuSpec::new(vec![6, 6], vec![0, 0]).unwrap();
        assert_eq!(s.canonical(), ClosedQuipuSpec::cycle(14).unwrap());
        let t = ClosedQuipuSpec::new(vec![1, 2, 3], vec![0, 2, 0]).unwrap();
        assert_eq!(
            t.collapsed(),
            ClosedQuipuSpec {
                k: vec![8],
                m: vec![2]
            }
        );
        let a = ClosedQuipuSpec::new(vec![7, 7], vec![0, 1])
            .unwrap()
            .canonical();
        let b = ClosedQuipuSpec::new(vec![7, 7], vec![1, 0])
            .unwrap()
            .canonical();
        assert_eq!(a, b);
        assert_eq!(
            a,
            ClosedQuipuSpec {
                k: vec![15],
                m: vec![1]
            }
        );
    }

    #[test]
    fn closed_reflection_pairs_k_with_the_right_junctions() {
        let s = ClosedQuipuSpec::new(vec![1, 2, 3], vec![4, 5, 6]).unwrap();
        let r = s.reflected();
        assert_eq!(r.m(), &[4, 6, 5]);
        assert_eq!(r.k(), &[3, 2, 1]);
        assert_eq!(r.reflected(), s);
    }

    #[test]
    fn parse_grammar() {
        let g: GraphSpec = "open 1,0,0,1 / 1,1,1".parse().unwrap();
        assert_eq!(g.to_string(), "open 1,0,0,1 / 1,1,1");
        let c: GraphSpec = "closed 7,7 / 1,0".parse().unwrap();
        assert_eq!(c.build().unwrap().n(), 17);
        assert_eq!(
            "cycle 14".parse::<GraphSpec>().unwrap(),
            GraphSpec::Cycle(14)
        );
        match "open 1,x / 1".parse::<GraphSpec>() {
            Err(Error::Parse { token, .. }) => assert_eq!(token, "x"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            "wheel 5".parse::<GraphSpec>(),
            Err(Error::Parse { .. })
        ));
    }
}
