//! Coxeter graphs: generator count and bond orders `m(s, s')`.

use serde_json::Value;
use thiserror::Error;

/// A finite-rank Coxeter graph. `bond(i, j)` is the order of `s_i s_j`;
/// the diagonal is 1 and off-diagonal entries are at least 2. Infinite
/// bonds are rejected at parse time.
#[derive(Clone, PartialEq, Eq)]
pub struct CoxeterGraph {
    rank: usize,
    bond: Vec<u32>,
    label: String,
}

/// Linear diagram shapes for which the coset-tower normal form is defined.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LinearType {
    /// Single chain, all consecutive bonds of order 3.
    A,
    /// Chain with `m(s_1, s_2) = 4` and all later consecutive bonds of order 3.
    B,
}

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("unrecognized graph spec {0:?}")]
    UnknownName(String),
    #[error("invalid rank for type {kind}: {rank}")]
    BadRank { kind: char, rank: usize },
    #[error("malformed graph JSON: {0}")]
    Json(String),
    #[error("bond list entry [{i}, {j}] conflicts with earlier entry: {m1} vs {m2}")]
    Asymmetric {
        i: usize,
        j: usize,
        m1: u32,
        m2: u32,
    },
    #[error("diagonal bond entry [{i}, {i}] must be 1, got {m}")]
    BadDiagonal { i: usize, m: u32 },
    #[error("bond order m({i}, {j}) = {m} is not supported: orders must be finite and at least 2")]
    BadBond { i: usize, j: usize, m: u32 },
    #[error("generator index {idx} out of range for rank {rank}")]
    IndexOutOfRange { idx: usize, rank: usize },
    #[error("rank {0} too large: only desk-scale finite groups are supported (rank <= 32)")]
    RankTooLarge(usize),
}

impl CoxeterGraph {
    /// Builds a graph from explicit off-diagonal bonds; omitted pairs
    /// default to order 2.
    pub fn from_bonds(
        rank: usize,
        bonds: &[(usize, usize, u32)],
        label: String,
    ) -> Result<Self, GraphError> {
        if rank == 0 {
            return Err(GraphError::Json("rank must be positive".into()));
        }
        // Generator sets are stored as u32 bitmasks, and any group of
        // higher rank is far beyond the enumeration cap anyway.
        if rank > 32 {
            return Err(GraphError::RankTooLarge(rank));
        }
        let mut bond = vec![2u32; rank * rank];
        for i in 0..rank {
            bond[i * rank + i] = 1;
        }
        let mut seen = vec![false; rank * rank];
        for &(i, j, m) in bonds {
            if i >= rank || j >= rank {
                return Err(GraphError::IndexOutOfRange {
                    idx: i.max(j),
                    rank,
                });
            }
            if i == j {
                if m != 1 {
                    return Err(GraphError::BadDiagonal { i, m });
                }
                continue;
            }
            if m < 2 {
                return Err(GraphError::BadBond { i, j, m });
            }
            let (a, b) = (i.min(j), i.max(j));
            if seen[a * rank + b] && bond[a * rank + b] != m {
                return Err(GraphError::Asymmetric {
                    i,
                    j,
                    m1: bond[a * rank + b],
                    m2: m,
                });
            }
            seen[a * rank + b] = true;
            bond[a * rank + b] = m;
            bond[b * rank + a] = m;
        }
        Ok(CoxeterGraph { rank, bond, label })
    }

    /// Parses a named type (`"A4"`, `"B3"`, `"D5"`, `"I2:7"`) or an
    /// explicit JSON spec `{"rank": n, "bonds": [[i, j, m], ...]}` with
    /// 0-based generator indices.
    pub fn parse(spec: &str) -> Result<Self, GraphError> {
        let spec = spec.trim();
        if spec.starts_with('{') {
            return Self::parse_json(spec);
        }
        let mut chars = spec.chars();
        let kind = chars
            .next()
            .ok_or_else(|| GraphError::UnknownName(spec.into()))?;
        let rest = chars.as_str();
        match kind {
            'A' | 'B' | 'D' => {
                let rank: usize = rest
                    .parse()
                    .map_err(|_| GraphError::UnknownName(spec.into()))?;
                match kind {
                    'A' => Self::type_a(rank),
                    'B' => Self::type_b(rank),
                    _ => Self::type_d(rank),
                }
            }
            'I' => {
                let m: u32 = rest
                    .strip_prefix("2:")
                    .and_then(|m| m.parse().ok())
                    .ok_or_else(|| GraphError::UnknownName(spec.into()))?;
                Self::dihedral(m)
            }
            _ => Err(GraphError::UnknownName(spec.into())),
        }
    }

    fn parse_json(spec: &str) -> Result<Self, GraphError> {
        let v: Value = serde_json::from_str(spec).map_err(|e| GraphError::Json(e.to_string()))?;
        let obj = v
            .as_object()
            .ok_or_else(|| GraphError::Json("expected object".into()))?;
        let rank = obj
            .get("rank")
            .and_then(Value::as_u64)
            .ok_or_else(|| GraphError::Json("missing positive integer field \"rank\"".into()))?
            as usize;
        let mut bonds = Vec::new();
        if let Some(list) = obj.get("bonds") {
            let list = list
                .as_array()
                .ok_or_else(|| GraphError::Json("\"bonds\" must be an array".into()))?;
            for entry in list {
                let triple = entry
                    .as_array()
                    .filter(|a| a.len() == 3)
                    .ok_or_else(|| GraphError::Json("bond entries must be [i, j, m]".into()))?;
                let get = |k: usize| {
                    triple[k].as_u64().ok_or_else(|| {
                        GraphError::Json("bond entries must be nonnegative integers".into())
                    })
                };
                bonds.push((get(0)? as usize, get(1)? as usize, get(2)? as u32));
            }
        }
        // Canonical label so that caching and reports are stable.
        let mut sorted = bonds.clone();
        sorted.sort_unstable();
        let label = format!(
            "custom:rank={rank};bonds={}",
            sorted
                .iter()
                .map(|(i, j, m)| format!("{i}-{j}-{m}"))
                .collect::<Vec<_>>()
                .join(",")
        );
        Self::from_bonds(rank, &bonds, label)
    }

    /// Chain with all consecutive bonds of order 3.
    pub fn type_a(rank: usize) -> Result<Self, GraphError> {
        if rank < 1 {
            return Err(GraphError::BadRank { kind: 'A', rank });
        }
        let bonds: Vec<_> = (0..rank.saturating_sub(1)).map(|i| (i, i + 1, 3)).collect();
        Self::from_bonds(rank, &bonds, format!("A{rank}"))
    }

    /// Chain with `m(s_1, s_2) = 4` and order-3 bonds afterwards, so the
    /// strong bond sits at the low-index end.
    pub fn type_b(rank: usize) -> Result<Self, GraphError> {
        if rank < 2 {
            return Err(GraphError::BadRank { kind: 'B', rank });
        }
        let mut bonds = vec![(0, 1, 4)];
        bonds.extend((1..rank - 1).map(|i| (i, i + 1, 3)));
        Self::from_bonds(rank, &bonds, format!("B{rank}"))
    }

    /// Fork at the low-index end: nodes 0 and 1 both bonded to node 2,
    /// then a chain.
    pub fn type_d(rank: usize) -> Result<Self, GraphError> {
        if rank < 4 {
            return Err(GraphError::BadRank { kind: 'D', rank });
        }
        let mut bonds = vec![(0, 2, 3)];
        bonds.extend((1..rank - 1).map(|i| (i, i + 1, 3)));
        Self::from_bonds(rank, &bonds, format!("D{rank}"))
    }

    /// Rank 2 with a single bond of order `m`.
    pub fn dihedral(m: u32) -> Result<Self, GraphError> {
        if m < 2 {
            return Err(GraphError::BadBond { i: 0, j: 1, m });
        }
        Self::from_bonds(2, &[(0, 1, m)], format!("I2:{m}"))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn bond(&self, i: usize, j: usize) -> u32 {
        self.bond[i * self.rank + j]
    }

    pub fn commutes(&self, i: usize, j: usize) -> bool {
        self.bond(i, j) == 2
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// All unordered pairs `{i, j}` with `m(i, j) >= 3`.
    pub fn noncommuting_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.rank {
            for j in i + 1..self.rank {
                if self.bond(i, j) >= 3 {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn is_simply_laced(&self) -> bool {
        (0..self.rank).all(|i| (i + 1..self.rank).all(|j| self.bond(i, j) <= 3))
    }

    pub fn max_bond(&self) -> u32 {
        (0..self.rank)
            .flat_map(|i| (i + 1..self.rank).map(move |j| (i, j)))
            .map(|(i, j)| self.bond(i, j))
            .max()
            .unwrap_or(2)
    }

    /// Detects whether the bond matrix is a type A or type B chain in the
    /// convention above (the detection is structural, so e.g. `I2:4`
    /// classifies as B of rank 2).
    pub fn linear_type(&self) -> Option<LinearType> {
        let r = self.rank;
        let chain_from = |start: usize| {
            (start..r - 1).all(|i| self.bond(i, i + 1) == 3)
                && (0..r).all(|i| (i + 2..r).all(|j| self.bond(i, j) == 2))
        };
        if r == 1 {
            return Some(LinearType::A);
        }
        if chain_from(0) {
            return Some(LinearType::A);
        }
        if self.bond(0, 1) == 4 && chain_from(1) {
            return Some(LinearType::B);
        }
        None
    }
}

impl std::fmt::Debug for CoxeterGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CoxeterGraph({})", self.label)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_types() {
        let a2 = CoxeterGraph::parse("A2").unwrap();
        assert_eq!(a2.rank(), 2);
        assert_eq!(a2.bond(0, 1), 3);

        let b3 = CoxeterGraph::parse("B3").unwrap();
        assert_eq!(b3.rank(), 3);
        assert_eq!(b3.bond(0, 1), 4);
        assert_eq!(b3.bond(1, 2), 3);
        assert_eq!(b3.bond(0, 2), 2);

        let i4 = CoxeterGraph::parse("I2:4").unwrap();
        assert_eq!(i4.rank(), 2);
        assert_eq!(i4.bond(0, 1), 4);
    }

    #[test]
    fn json_spec() {
        let g = CoxeterGraph::parse(r#"{"rank": 3, "bonds": [[0, 1, 4], [1, 2, 3]]}"#).unwrap();
        assert_eq!(g.bond(0, 1), 4);
        assert_eq!(g.bond(0, 2), 2);
        assert_eq!(g.linear_type(), Some(LinearType::B));
        // Symmetric duplicates are fine, conflicts are not.
        assert!(CoxeterGraph::parse(r#"{"rank": 2, "bonds": [[0, 1, 3], [1, 0, 3]]}"#).is_ok());
        assert!(matches!(
            CoxeterGraph::parse(r#"{"rank": 2, "bonds": [[0, 1, 3], [1, 0, 4]]}"#),
            Err(GraphError::Asymmetric { .. })
        ));
        assert!(matches!(
            CoxeterGraph::parse(r#"{"rank": 2, "bonds": [[0, 0, 2]]}"#),
            Err(GraphError::BadDiagonal { .. })
        ));
        assert!(matches!(
            CoxeterGraph::parse(r#"{"rank": 2, "bonds": [[0, 1, 0]]}"#),
            Err(GraphError::BadBond { .. })
        ));
    }

    #[test]
    fn bad_specs() {
        assert!(CoxeterGraph::parse("").is_err());
        assert!(CoxeterGraph::parse("Q3").is_err());
        assert!(CoxeterGraph::parse("Axx").is_err());
        assert!(CoxeterGraph::parse("I2:").is_err());
        assert!(CoxeterGraph::parse("B1").is_err());
        assert!(CoxeterGraph::parse("D3").is_err());
    }

    #[test]
    fn linear_type_detection() {
        assert_eq!(
            CoxeterGraph::parse("A4").unwrap().linear_type(),
            Some(LinearType::A)
        );
        assert_eq!(
            CoxeterGraph::parse("B4").unwrap().linear_type(),
            Some(LinearType::B)
        );
        assert_eq!(
            CoxeterGraph::parse("A1").unwrap().linear_type(),
            Some(LinearType::A)
        );
        assert_eq!(
            CoxeterGraph::parse("I2:4").unwrap().linear_type(),
            Some(LinearType::B)
        );
        assert_eq!(CoxeterGraph::parse("I2:5").unwrap().linear_type(), None);
        assert_eq!(CoxeterGraph::parse("D4").unwrap().linear_type(), None);
    }
}
