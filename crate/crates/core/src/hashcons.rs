//! Maximal sharing: every structurally distinct ground term is stored once
//! and named by a [`NodeId`], so equality of interned terms is id equality.
//!
//! Ids are scoped to one table and depend on interning order; anything
//! order-sensitive (leaf sorting) still compares structure. The table is an
//! arena: nodes are never evicted. Interning takes `&mut self`, so a table
//! shared between threads must sit behind a lock, which keeps interning
//! linearizable.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::store::Store;
use crate::term::{CtorId, Prim, Signature, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(u32);

impl NodeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Node {
    Prim(Prim),
    App(CtorId, Box<[NodeId]>),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SharingStats {
    pub nodes: usize,
    /// Child references summed over all nodes.
    pub edges: usize,
}

#[derive(Clone, Debug)]
pub struct HashConsTable {
    arities: Vec<usize>,
    nodes: Vec<Node>,
    index: HashMap<Node, NodeId>,
}

impl HashConsTable {
    pub fn new(sig: &Signature) -> Self {
        HashConsTable {
            arities: sig.ctor_ids().map(|c| sig.arity(c)).collect(),
            nodes: Vec::new(),
            index: HashMap::new(),
        }
    }

    fn insert(&mut self, node: Node) -> NodeId {
        if let Some(&id) = self.index.get(&node) {
            return id;
        }
        let id = NodeId(self.nodes.len() as u32);
        self.nodes.push(node.clone());
        self.index.insert(node, id);
        id
    }

    /// Returns the id of `ctor(children)`, allocating it if new.
    pub fn intern(&mut self, ctor: CtorId, children: &[NodeId]) -> Result<NodeId> {
        let expected = *self
            .arities
            .get(ctor.index())
            .ok_or_else(|| Error::UnknownConstructor(format!("#{}", ctor.0)))?;
        if expected != children.len() {
            return Err(Error::Arity {
                ctor: format!("#{}", ctor.0),
                expected,
                got: children.len(),
            });
        }
        if let Some(bad) = children.iter().find(|c| c.index() >= self.nodes.len()) {
            return Err(Error::UnknownNode(bad.0));
        }
        Ok(self.insert(Node::App(ctor, children.into())))
    }

    pub fn intern_prim(&mut self, p: Prim) -> NodeId {
        self.insert(Node::Prim(p))
    }

    pub fn node(&self, id: NodeId) -> Result<&Node> {
        self.nodes.get(id.index()).ok_or(Error::UnknownNode(id.0))
    }

    pub fn from_term(&mut self, t: &Term) -> Result<NodeId> {
        match t {
            Term::Var(v) => Err(Error::IllSorted(format!(
                "variable `{}` cannot be interned",
                v.name
            ))),
            Term::Prim(p) => Ok(self.intern_prim(p.clone())),
            Term::App(c, args) => {
                let kids = args
                    .iter()
                    .map(|a| self.from_term(a))
                    .collect::<Result<Vec<_>>>()?;
                self.intern(*c, &kids)
            }
        }
    }

    pub fn to_term(&self, id: NodeId) -> Result<Term> {
        let mut memo = HashMap::new();
        self.read_back(id, &mut memo)
    }

    fn read_back(&self, id: NodeId, memo: &mut HashMap<NodeId, Term>) -> Result<Term> {
        if let Some(t) = memo.get(&id) {
            return Ok(t.clone());
        }
        let t = match self.node(id)? {
            Node::Prim(p) => Term::Prim(p.clone()),
            Node::App(c, kids) => {
                let args = kids
                    .iter()
                    .map(|k| self.read_back(*k, memo))
                    .collect::<Result<Vec<_>>>()?;
                Term::App(*c, Arc::from(args))
            }
        };
        memo.insert(id, t.clone());
        Ok(t)
    }

    pub fn stats(&self) -> SharingStats {
        SharingStats {
            nodes: self.nodes.len(),
            edges: self
                .nodes
                .iter()
                .map(|n| match n {
                    Node::App(_, kids) => kids.len(),
                    Node::Prim(_) => 0,
                })
                .sum(),
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Structural order on interned terms, short-circuiting on shared nodes.
    pub fn compare_ids(&self, a: NodeId, b: NodeId) -> Ordering {
        if a == b {
            return Ordering::Equal;
        }
        match (&self.nodes[a.index()], &self.nodes[b.index()]) {
            (Node::Prim(p), Node::Prim(q)) => p.cmp(q),
            (Node::Prim(_), Node::App(..)) => Ordering::Less,
            (Node::App(..), Node::Prim(_)) => Ordering::Greater,
            (Node::App(c, xs), Node::App(d, ys)) => c.cmp(d).then_with(|| {
                xs.iter()
                    .zip(ys.iter())
                    .map(|(x, y)| self.compare_ids(*x, *y))
                    .find(|o| o.is_ne())
                    .unwrap_or_else(|| xs.len().cmp(&ys.len()))
            }),
        }
    }
}

/// Free-standing form of [`HashConsTable::stats`].
pub fn sharing_stats(table: &HashConsTable) -> SharingStats {
    table.stats()
}

impl Store for HashConsTable {
    type Value = NodeId;

    fn prim(&mut self, p: Prim) -> NodeId {
        self.intern_prim(p)
    }

    fn app(&mut self, ctor: CtorId, args: Vec<NodeId>) -> NodeId {
        debug_assert_eq!(self.arities[ctor.index()], args.len());
        self.insert(Node::App(ctor, args.into()))
    }

    fn head(&self, v: &NodeId) -> Option<CtorId> {
        match &self.nodes[v.index()] {
            Node::App(c, _) => Some(*c),
            Node::Prim(_) => None,
        }
    }

    fn args(&self, v: &NodeId) -> Vec<NodeId> {
        match &self.nodes[v.index()] {
            Node::App(_, kids) => kids.to_vec(),
            Node::Prim(_) => Vec::new(),
        }
    }

    fn arg(&self, v: &NodeId, i: usize) -> NodeId {
        match &self.nodes[v.index()] {
            Node::App(_, kids) => kids[i],
            Node::Prim(_) => panic!("primitive has no arguments"),
        }
    }

    fn as_prim(&self, v: &NodeId) -> Option<Prim> {
        match &self.nodes[v.index()] {
            Node::Prim(p) => Some(p.clone()),
            Node::App(..) => None,
        }
    }

    fn same(&self, a: &NodeId, b: &NodeId) -> bool {
        a == b
    }

    fn compare(&self, a: &NodeId, b: &NodeId) -> Ordering {
        self.compare_ids(*a, *b)
    }

    fn to_term(&self, v: &NodeId) -> Term {
        HashConsTable::to_term(self, *v).expect("live id")
    }

    fn import(&mut self, t: &Term) -> NodeId {
        self.from_term(t).expect("ground, well-sorted term")
    }
}
