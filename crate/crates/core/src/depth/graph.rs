use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::DepthError;

/// A total map `h: I → I` on `I = {0, …, n-1}`. The text form is 1-based:
/// `domain=1..3; map=2,3,3`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FunctionGraph {
    map: Vec<usize>,
}

impl FunctionGraph {
    pub fn new(map: Vec<usize>) -> Result<Self, DepthError> {
        let n = map.len();
        if let Some(&bad) = map.iter().find(|&&y| y >= n) {
            return Err(DepthError::OutsideDomain(bad));
        }
        Ok(FunctionGraph { map })
    }

    pub fn identity(n: usize) -> Self {
        FunctionGraph { map: (0..n).collect() }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &FunctionGraph) -> FunctionGraph {
        FunctionGraph { map: self.map.iter().map(|&x| other.map[x]).collect() }
    }

    pub fn commutes_with(&self, other: &FunctionGraph) -> bool {
        self.len() == other.len() && self.then(other) == other.then(self)
    }

    /// Every map on an `n`-element domain.
    pub fn all(n: usize) -> impl Iterator<Item = FunctionGraph> {
        let total = n.pow(n as u32);
        (0..total).map(move |mut code| {
            let map = (0..n)
                .map(|_| {
                    let y = code % n;
                    code /= n;
                    y
                })
                .collect();
            FunctionGraph { map }
        })
    }
}

impl fmt::Display for FunctionGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let images: Vec<String> = self.map.iter().map(|y| (y + 1).to_string()).collect();
        write!(f, "domain=1..{}; map={}", self.map.len(), images.join(","))
    }
}

impl FromStr for FunctionGraph {
    type Err = DepthError;

    fn from_str(s: &str) -> Result<Self, DepthError> {
        let bad = || DepthError::BadGraph(s.to_string());
        let mut size = None;
        let mut images = None;
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part.split_once('=').ok_or_else(bad)?;
            match key.trim() {
                "domain" => {
                    let (lo, hi) = value.trim().split_once("..").ok_or_else(bad)?;
                    if lo.trim() != "1" {
                        return Err(bad());
                    }
                    size = Some(hi.trim().parse::<usize>().map_err(|_| bad())?);
                }
                "map" => {
                    let parsed: Result<Vec<usize>, _> = value.split(',').map(|v| v.trim().parse::<usize>()).collect();
                    images = Some(parsed.map_err(|_| bad())?);
                }
                _ => return Err(bad()),
            }
        }
        let images = images.ok_or_else(bad)?;
        let n = size.unwrap_or(images.len());
        if images.len() != n {
            return Err(DepthError::NotTotal(n));
        }
        let map = images
            .into_iter()
            .map(|y| if (1..=n).contains(&y) { Ok(y - 1) } else { Err(DepthError::OutsideDomain(y)) })
            .collect::<Result<Vec<_>, _>>()?;
        FunctionGraph::new(map)
    }
}

/// Depth of a point: a natural number, or infinite for points on a cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Depth {
    Finite(u32),
    Infinite,
}

impl fmt::Display for Depth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Depth::Finite(n) => write!(f, "{n}"),
            Depth::Infinite => f.write_str("inf"),
        }
    }
}

/// Depths of all points. Level `n` holds the points of depth at least `n`,
/// which is the image of level `n-1`; the levels shrink until they settle on
/// the points of infinite depth.
pub fn depths(h: &FunctionGraph) -> Vec<Depth> {
    let n = h.len();
    let mut level = vec![true; n];
    let mut reached = vec![0u32; n];
    for round in 1.. {
        let mut next = vec![false; n];
        for x in (0..n).filter(|&x| level[x]) {
            next[h.apply(x)] = true;
        }
        if next == level {
            break;
        }
        for x in (0..n).filter(|&x| next[x]) {
            reached[x] = round;
        }
        level = next;
    }
    (0..n).map(|x| if level[x] { Depth::Infinite } else { Depth::Finite(reached[x]) }).collect()
}

pub fn depth(x: usize, h: &FunctionGraph) -> Result<Depth, DepthError> {
    if x >= h.len() {
        return Err(DepthError::OutsideDomain(x));
    }
    Ok(depths(h)[x])
}
