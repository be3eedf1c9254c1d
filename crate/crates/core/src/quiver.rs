//! Finite quivers: named vertices and arrows, acyclicity, topological data.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Index of a vertex in declaration order.
pub type VertexId = usize;
/// Index of an arrow in declaration order.
pub type ArrowId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub tail: VertexId,
    pub head: VertexId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertex_names: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: BTreeMap<String, VertexId>,
    arrow_index: BTreeMap<String, ArrowId>,
    acyclic: bool,
    /// Vertices in a topological order (tails before heads); empty if cyclic.
    topo: Vec<VertexId>,
    /// Length of the longest path; 0 if cyclic.
    longest_path: usize,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<(String, String, String)>) -> Result<Self> {
        let mut vertex_index = BTreeMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), i).is_some() {
                return Err(Error::DuplicateId(v.clone()));
            }
        }
        let mut arrow_index = BTreeMap::new();
        let mut arrs = Vec::new();
        for (i, (name, tail, head)) in arrows.into_iter().enumerate() {
            if vertex_index.contains_key(&name) || arrow_index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateId(name));
            }
            let t = *vertex_index.get(&tail).ok_or_else(|| Error::UnknownVertex {
                arrow: name.clone(),
                vertex: tail.clone(),
            })?;
            let h = *vertex_index.get(&head).ok_or_else(|| Error::UnknownVertex {
                arrow: name.clone(),
                vertex: head.clone(),
            })?;
            arrs.push(Arrow { name, tail: t, head: h });
        }
        let (acyclic, topo, longest_path) = toposort(vertices.len(), &arrs);
        Ok(Quiver {
            vertex_names: vertices,
            arrows: arrs,
            vertex_index,
            arrow_index,
            acyclic,
            topo,
            longest_path,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.vertex_index.get(name).copied()
    }

    pub fn arrow(&self, a: ArrowId) -> &Arrow {
        &self.arrows[a]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_id(&self, name: &str) -> Option<ArrowId> {
        self.arrow_index.get(name).copied()
    }

    pub fn is_acyclic(&self) -> bool {
        self.acyclic
    }

    /// Topological order of the vertices; errors on a cyclic quiver.
    pub fn topological_order(&self) -> Result<&[VertexId]> {
        if self.acyclic {
            Ok(&self.topo)
        } else {
            Err(Error::CyclicQuiver)
        }
    }

    pub fn longest_path_len(&self) -> usize {
        self.longest_path
    }

    pub fn arrows_into(&self, v: VertexId) -> impl Iterator<Item = ArrowId> + '_ {
        self.arrows
            .iter()
            .enumerate()
            .filter(move |(_, a)| a.head == v)
            .map(|(i, _)| i)
    }

    pub fn arrows_out_of(&self, v: VertexId) -> impl Iterator<Item = ArrowId> + '_ {
        self.arrows
            .iter()
            .enumerate()
            .filter(move |(_, a)| a.tail == v)
            .map(|(i, _)| i)
    }
}

fn toposort(n: usize, arrows: &[Arrow]) -> (bool, Vec<VertexId>, usize) {
    let mut indeg = vec![0usize; n];
    for a in arrows {
        indeg[a.head] += 1;
    }
    let mut queue: Vec<VertexId> = (0..n).filter(|&v| indeg[v] == 0).collect();
    queue.sort();
    let mut order = Vec::with_capacity(n);
    let mut depth = vec![0usize; n];
    let mut i = 0;
    while i < queue.len() {
        let v = queue[i];
        i += 1;
        order.push(v);
        for (_, a) in arrows.iter().enumerate().filter(|(_, a)| a.tail == v) {
            depth[a.head] = depth[a.head].max(depth[v] + 1);
            indeg[a.head] -= 1;
            if indeg[a.head] == 0 {
                queue.push(a.head);
            }
        }
    }
    if order.len() != n {
        (false, Vec::new(), 0)
    } else {
        let longest = depth.iter().copied().max().unwrap_or(0);
        (true, order, longest)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kronecker() -> Quiver {
        Quiver::new(
            vec!["1".into(), "2".into()],
            vec![
                ("a".into(), "1".into(), "2".into()),
                ("b".into(), "1".into(), "2".into()),
            ],
        )
        .unwrap()
    }

    #[test]
    fn basic_structure() {
        let q = kronecker();
        assert!(q.is_acyclic());
        assert_eq!(q.longest_path_len(), 1);
        assert_eq!(q.topological_order().unwrap(), &[0, 1]);
        assert_eq!(q.arrows_into(1).count(), 2);
    }

    #[test]
    fn detects_cycle() {
        let q = Quiver::new(
            vec!["1".into(), "2".into()],
            vec![
                ("a".into(), "1".into(), "2".into()),
                ("b".into(), "2".into(), "1".into()),
            ],
        )
        .unwrap();
        assert!(!q.is_acyclic());
        assert!(q.topological_order().is_err());
    }

    #[test]
    fn rejects_unknown_vertex() {
        let err = Quiver::new(
            vec!["1".into()],
            vec![("a".into(), "1".into(), "9".into())],
        )
        .unwrap_err();
        assert!(matches!(err, Error::UnknownVertex { .. }));
    }
}
