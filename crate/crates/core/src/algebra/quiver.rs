use std::collections::HashMap;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A path, composed left to right: `arrows[0]` is traversed first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Path {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self` followed by `other`, if the endpoints match.
    pub fn concat(&self, other: &Path) -> Option<Path> {
        if self.target != other.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path {
            source: self.source,
            target: other.target,
            arrows,
        })
    }

    /// Vertices visited, in order, including both endpoints.
    pub fn vertices<'a>(&'a self, quiver: &'a Quiver) -> impl Iterator<Item = usize> + 'a {
        std::iter::once(self.source).chain(self.arrows.iter().map(|&a| quiver.arrows[a].target))
    }
}

/// Finite acyclic quiver with named vertices and arrows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    topo: Vec<usize>,
}

const PATH_LIMIT: usize = 50_000;

impl Quiver {
    /// Arrows are `(name, source, target)` given by vertex name.
    pub fn new<S: AsRef<str>>(vertices: &[S], arrows: &[(S, S, S)]) -> Result<Quiver> {
        let vertices: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let mut index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if v.is_empty() {
                return Err(Error::InvalidQuiver("empty vertex id".into()));
            }
            if index.insert(v.as_str(), i).is_some() {
                return Err(Error::InvalidQuiver(format!("duplicate vertex id {v:?}")));
            }
        }
        let mut names = HashMap::new();
        let mut out = Vec::with_capacity(arrows.len());
        for (name, s, t) in arrows {
            let (name, s, t) = (name.as_ref(), s.as_ref(), t.as_ref());
            if name.is_empty() {
                return Err(Error::InvalidQuiver("empty arrow name".into()));
            }
            if names.insert(name.to_string(), out.len()).is_some() {
                return Err(Error::InvalidQuiver(format!(
                    "duplicate arrow name {name:?}"
                )));
            }
            let lookup = |v: &str| {
                index.get(v).copied().ok_or_else(|| {
                    Error::InvalidQuiver(format!("arrow {name:?} uses unknown vertex {v:?}"))
                })
            };
            out.push(Arrow {
                name: name.to_string(),
                source: lookup(s)?,
                target: lookup(t)?,
            });
        }
        let topo = topological_order(&vertices, &out)?;
        Ok(Quiver {
            vertices,
            arrows: out,
            topo,
        })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// Vertices ordered so that every arrow goes forward.
    pub fn topological_order(&self) -> &[usize] {
        &self.topo
    }

    pub fn arrows_from(&self, v: usize) -> impl Iterator<Item = (usize, &Arrow)> {
        self.arrows
            .iter()
            .enumerate()
            .filter(move |(_, a)| a.source == v)
    }

    pub fn arrows_into(&self, v: usize) -> impl Iterator<Item = (usize, &Arrow)> {
        self.arrows
            .iter()
            .enumerate()
            .filter(move |(_, a)| a.target == v)
    }

    /// Every path, trivial ones included.
    pub fn paths(&self) -> Result<Vec<Path>> {
        let mut all = Vec::new();
        for v in 0..self.vertex_count() {
            let mut stack = vec![Path::trivial(v)];
            while let Some(path) = stack.pop() {
                for (a, arrow) in self.arrows_from(path.target) {
                    let mut arrows = path.arrows.clone();
                    arrows.push(a);
                    stack.push(Path {
                        source: path.source,
                        target: arrow.target,
                        arrows,
                    });
                }
                all.push(path);
                if all.len() > PATH_LIMIT {
                    return Err(Error::InvalidQuiver(format!(
                        "more than {PATH_LIMIT} paths"
                    )));
                }
            }
        }
        all.sort_by(|a, b| {
            (a.len(), a.source, a.target, &a.arrows).cmp(&(b.len(), b.source, b.target, &b.arrows))
        });
        Ok(all)
    }

    pub fn path_from_names<S: AsRef<str>>(&self, names: &[S]) -> Result<Path> {
        let mut arrows = Vec::with_capacity(names.len());
        for n in names {
            let n = n.as_ref();
            arrows.push(
                self.arrow_index(n)
                    .ok_or_else(|| Error::InvalidQuiver(format!("unknown arrow {n:?}")))?,
            );
        }
        let Some(&first) = arrows.first() else {
            return Err(Error::NonAdmissibleRelations(
                "empty path in relation".into(),
            ));
        };
        let mut target = self.arrows[first].target;
        for &a in &arrows[1..] {
            if self.arrows[a].source != target {
                return Err(Error::InvalidQuiver(format!(
                    "arrows {:?} do not compose",
                    names.iter().map(|s| s.as_ref()).collect::<Vec<_>>()
                )));
            }
            target = self.arrows[a].target;
        }
        Ok(Path {
            source: self.arrows[first].source,
            target,
            arrows,
        })
    }

    /// Human label: `e<v>` for trivial paths, arrow names in traversal order otherwise.
    pub fn path_label(&self, path: &Path) -> String {
        if path.is_trivial() {
            return format!("e{}", self.vertices[path.source]);
        }
        let sep = if self.arrows.iter().all(|a| a.name.chars().count() == 1) {
            ""
        } else {
            "*"
        };
        path.arrows
            .iter()
            .map(|&a| self.arrows[a].name.as_str())
            .collect::<Vec<_>>()
            .join(sep)
    }

    /// Full subquiver on the given vertices (kept in original order).
    /// Returns the subquiver and, for each of its arrows, the original arrow index.
    pub fn full_subquiver(&self, keep: &[usize]) -> (Quiver, Vec<usize>) {
        let mut new_index = vec![None; self.vertex_count()];
        for (i, &v) in keep.iter().enumerate() {
            new_index[v] = Some(i);
        }
        let vertices: Vec<String> = keep.iter().map(|&v| self.vertices[v].clone()).collect();
        let mut arrows = Vec::new();
        let mut arrow_map = Vec::new();
        for (i, a) in self.arrows.iter().enumerate() {
            if let (Some(s), Some(t)) = (new_index[a.source], new_index[a.target]) {
                arrows.push(Arrow {
                    name: a.name.clone(),
                    source: s,
                    target: t,
                });
                arrow_map.push(i);
            }
        }
        let topo = topological_order(&vertices, &arrows).expect("subquiver of an acyclic quiver");
        (
            Quiver {
                vertices,
                arrows,
                topo,
            },
            arrow_map,
        )
    }

    /// Build directly from resolved arrows (used for derived presentations).
    pub(crate) fn from_parts(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Quiver> {
        let topo = topological_order(&vertices, &arrows)?;
        Ok(Quiver {
            vertices,
            arrows,
            topo,
        })
    }
}

fn topological_order(vertices: &[String], arrows: &[Arrow]) -> Result<Vec<usize>> {
    let n = vertices.len();
    let mut indeg = vec![0usize; n];
    for a in arrows {
        indeg[a.target] += 1;
    }
    let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    ready.reverse();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = ready.pop() {
        order.push(v);
        let mut next = Vec::new();
        for a in arrows.iter().filter(|a| a.source == v) {
            indeg[a.target] -= 1;
            if indeg[a.target] == 0 {
                next.push(a.target);
            }
        }
        next.sort_unstable_by(|a, b| b.cmp(a));
        ready.extend(next);
    }
    if order.len() < n {
        let stuck = (0..n).find(|&v| indeg[v] > 0).unwrap();
        return Err(Error::CyclicQuiver(vertices[stuck].clone()));
    }
    Ok(order)
}
