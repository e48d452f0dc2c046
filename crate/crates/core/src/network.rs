//! Tensor networks: nodes, bonds between node legs, and an ordered list of
//! open legs that fixes the leg order of the contracted result.

use std::collections::{BTreeMap, HashSet};

use thiserror::Error;

use crate::tensor::{Tensor, TensorError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub usize);

/// A specific leg of a specific node.
pub type LegRef = (NodeId, usize);

/// A wire joining two legs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LegBinding {
    pub a: LegRef,
    pub b: LegRef,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetworkError {
    #[error("unknown node {0:?}")]
    UnknownNode(NodeId),

    #[error("leg {1} out of range on node {0:?}")]
    LegOutOfRange(NodeId, usize),

    #[error("leg {1} of node {0:?} is neither bonded nor open")]
    DanglingLeg(NodeId, usize),

    #[error("leg {1} of node {0:?} is used more than once")]
    DuplicatedLeg(NodeId, usize),

    #[error("bond order is not a permutation of the network's bonds")]
    BadOrder,

    #[error(transparent)]
    Tensor(#[from] TensorError),
}

#[derive(Clone, Debug, Default)]
pub struct TensorNetwork {
    nodes: Vec<Tensor>,
    bonds: Vec<LegBinding>,
    open_legs: Vec<LegRef>,
}

struct Cluster {
    tensor: Tensor,
    legs: Vec<LegRef>,
}

impl Cluster {
    fn position(&self, leg: LegRef) -> usize {
        self.legs
            .iter()
            .position(|&l| l == leg)
            .expect("bond endpoint must live in its cluster")
    }
}

/// Bookkeeping for a contraction in progress.
struct Contraction<'a> {
    net: &'a TensorNetwork,
    clusters: Vec<Option<Cluster>>,
    owner: Vec<usize>,
}

impl<'a> Contraction<'a> {
    fn new(net: &'a TensorNetwork) -> Self {
        let clusters = net
            .nodes
            .iter()
            .enumerate()
            .map(|(i, t)| {
                Some(Cluster {
                    tensor: t.clone(),
                    legs: (0..t.rank()).map(|l| (NodeId(i), l)).collect(),
                })
            })
            .collect();
        Contraction { net, clusters, owner: (0..net.nodes.len()).collect() }
    }

    fn cluster_of(&self, leg: LegRef) -> usize {
        self.owner[leg.0 .0]
    }

    fn rank(&self, c: usize) -> usize {
        self.clusters[c].as_ref().map_or(0, |cl| cl.tensor.rank())
    }

    /// Contracts every bond in `bonds`; all must join clusters `x` and `y`,
    /// or all must lie inside `x` when `x == y`.
    fn merge(&mut self, x: usize, y: usize, bonds: &[LegBinding]) -> Result<(), NetworkError> {
        if x == y {
            for bond in bonds {
                let cl = self.clusters[x].as_mut().expect("live cluster");
                let (px, py) = (cl.position(bond.a), cl.position(bond.b));
                cl.tensor = cl.tensor.trace(px, py)?;
                cl.legs.retain(|&l| l != bond.a && l != bond.b);
            }
            return Ok(());
        }
        let cx = self.clusters[x].take().expect("live cluster");
        let cy = self.clusters[y].take().expect("live cluster");
        let mut legs_x = Vec::with_capacity(bonds.len());
        let mut legs_y = Vec::with_capacity(bonds.len());
        for bond in bonds {
            let (in_x, in_y) = if self.cluster_of(bond.a) == x {
                (bond.a, bond.b)
            } else {
                (bond.b, bond.a)
            };
            legs_x.push(cx.position(in_x));
            legs_y.push(cy.position(in_y));
        }
        let tensor = cx.tensor.contract_pair(&legs_x, &cy.tensor, &legs_y)?;
        let mut legs: Vec<LegRef> = cx
            .legs
            .iter()
            .enumerate()
            .filter(|(p, _)| !legs_x.contains(p))
            .map(|(_, &l)| l)
            .collect();
        legs.extend(
            cy.legs
                .iter()
                .enumerate()
                .filter(|(p, _)| !legs_y.contains(p))
                .map(|(_, &l)| l),
        );
        for o in self.owner.iter_mut() {
            if *o == y {
                *o = x;
            }
        }
        self.clusters[x] = Some(Cluster { tensor, legs });
        Ok(())
    }

    /// Outer-products the surviving clusters and orders legs as declared.
    fn finish(self) -> Result<Tensor, NetworkError> {
        let mut acc: Option<Cluster> = None;
        for cl in self.clusters.into_iter().flatten() {
            acc = Some(match acc {
                None => cl,
                Some(prev) => {
                    let mut legs = prev.legs;
                    legs.extend(cl.legs);
                    Cluster { tensor: prev.tensor.outer(&cl.tensor), legs }
                }
            });
        }
        let Some(result) = acc else {
            // empty network: the empty product
            return Ok(Tensor::scalar(1.0.into()));
        };
        let perm: Vec<usize> = result
            .legs
            .iter()
            .map(|leg| {
                self.net
                    .open_legs
                    .iter()
                    .position(|o| o == leg)
                    .expect("validated: surviving legs are open")
            })
            .collect();
        Ok(result.tensor.permute_legs(&perm)?)
    }
}

impl TensorNetwork {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, tensor: Tensor) -> NodeId {
        self.nodes.push(tensor);
        NodeId(self.nodes.len() - 1)
    }

    /// Joins two legs with a wire. Full well-formedness is checked by
    /// [`TensorNetwork::validate`].
    pub fn bond(&mut self, a: LegRef, b: LegRef) -> Result<(), NetworkError> {
        self.check_leg(a)?;
        self.check_leg(b)?;
        self.bonds.push(LegBinding { a, b });
        Ok(())
    }

    pub fn open(&mut self, leg: LegRef) -> Result<(), NetworkError> {
        self.check_leg(leg)?;
        self.open_legs.push(leg);
        Ok(())
    }

    pub fn set_open_legs(&mut self, legs: Vec<LegRef>) -> Result<(), NetworkError> {
        for &leg in &legs {
            self.check_leg(leg)?;
        }
        self.open_legs = legs;
        Ok(())
    }

    pub fn node(&self, id: NodeId) -> Option<&Tensor> {
        self.nodes.get(id.0)
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn bonds(&self) -> &[LegBinding] {
        &self.bonds
    }

    pub fn open_legs(&self) -> &[LegRef] {
        &self.open_legs
    }

    fn check_leg(&self, (node, leg): LegRef) -> Result<(), NetworkError> {
        let t = self.nodes.get(node.0).ok_or(NetworkError::UnknownNode(node))?;
        if leg >= t.rank() {
            return Err(NetworkError::LegOutOfRange(node, leg));
        }
        Ok(())
    }

    /// Checks that every leg of every node is in exactly one bond or exactly
    /// one open-leg slot.
    pub fn validate(&self) -> Result<(), NetworkError> {
        let mut seen: HashSet<LegRef> = HashSet::new();
        let endpoints = self
            .bonds
            .iter()
            .flat_map(|b| [b.a, b.b])
            .chain(self.open_legs.iter().copied());
        for leg in endpoints {
            self.check_leg(leg)?;
            if !seen.insert(leg) {
                return Err(NetworkError::DuplicatedLeg(leg.0, leg.1));
            }
        }
        for (i, t) in self.nodes.iter().enumerate() {
            for l in 0..t.rank() {
                if !seen.contains(&(NodeId(i), l)) {
                    return Err(NetworkError::DanglingLeg(NodeId(i), l));
                }
            }
        }
        Ok(())
    }

    /// Contracts the network with a greedy minimum-intermediate-rank order.
    ///
    /// At each step the pair of clusters whose merged tensor has the fewest
    /// legs is contracted over all bonds between them; ties go to the lowest
    /// cluster indices. Bonds internal to one cluster are traced out first.
    pub fn contract(&self) -> Result<Tensor, NetworkError> {
        self.validate()?;
        let mut work = Contraction::new(self);
        let mut remaining: Vec<LegBinding> = self.bonds.clone();
        while !remaining.is_empty() {
            let mut shared: BTreeMap<(usize, usize), usize> = BTreeMap::new();
            for bond in &remaining {
                let (x, y) = (work.cluster_of(bond.a), work.cluster_of(bond.b));
                *shared.entry((x.min(y), x.max(y))).or_default() += 1;
            }
            let (_, (x, y)) = shared
                .iter()
                .map(|(&(x, y), &n)| {
                    let cost = if x == y { 0 } else { work.rank(x) + work.rank(y) - 2 * n };
                    (cost, (x, y))
                })
                .min()
                .expect("remaining is non-empty");
            let (chosen, rest): (Vec<LegBinding>, Vec<LegBinding>) =
                remaining.into_iter().partition(|o| {
                    let (p, q) = (work.cluster_of(o.a), work.cluster_of(o.b));
                    (p.min(q), p.max(q)) == (x, y)
                });
            work.merge(x, y, &chosen)?;
            remaining = rest;
        }
        work.finish()
    }

    /// Contracts bonds one at a time in the given order (indices into
    /// [`TensorNetwork::bonds`]). The result is independent of the order.
    pub fn contract_in_order(&self, order: &[usize]) -> Result<Tensor, NetworkError> {
        self.validate()?;
        let mut sorted = order.to_vec();
        sorted.sort_unstable();
        if sorted != (0..self.bonds.len()).collect::<Vec<_>>() {
            return Err(NetworkError::BadOrder);
        }
        let mut work = Contraction::new(self);
        for &k in order {
            let bond = self.bonds[k];
            let (x, y) = (work.cluster_of(bond.a), work.cluster_of(bond.b));
            work.merge(x, y, &[bond])?;
        }
        work.finish()
    }
}
