use std::collections::BTreeMap;

use super::{Multicomplex, ValidationReport, Violation};

/// Checks every multicomplex axiom and lists each violation.
///
/// Rules: `distinct-vertices`, `empty-simplex`, `vertex-singleton`, `facet-keys`,
/// `facet-vertex-set`, `composition`.
pub fn validate(mc: &Multicomplex) -> ValidationReport {
    let mut out = Vec::new();
    let sims = mc.simplices();

    for s in sims {
        if s.vertices.is_empty() {
            out.push(Violation {
                rule: "empty-simplex",
                ids: vec![s.id.clone()],
                message: format!("simplex `{}` has no vertices", s.id),
            });
        }
        if s.vertices.windows(2).any(|w| w[0] == w[1]) {
            out.push(Violation {
                rule: "distinct-vertices",
                ids: vec![s.id.clone()],
                message: format!("simplex `{}` repeats a vertex", s.id),
            });
        }
    }

    let mut singletons: BTreeMap<usize, Vec<&str>> = BTreeMap::new();
    for s in sims.iter().filter(|s| s.vertices.len() == 1) {
        singletons.entry(s.vertices[0]).or_default().push(&s.id);
    }
    for v in 0..mc.num_vertices() {
        let found = singletons.get(&v).map_or(0, Vec::len);
        if found != 1 {
            let mut ids = vec![mc.vertex_name(v).to_string()];
            ids.extend(singletons.get(&v).into_iter().flatten().map(|s| s.to_string()));
            out.push(Violation {
                rule: "vertex-singleton",
                ids,
                message: format!("vertex `{}` carries {} 0-simplices, expected 1", mc.vertex_name(v), found),
            });
        }
    }

    // Facet keys must be exactly the codimension-one subsets, each glued to a simplex on that subset.
    let mut facets_ok = vec![true; sims.len()];
    for (si, s) in sims.iter().enumerate() {
        if s.vertices.windows(2).any(|w| w[0] == w[1]) || s.vertices.is_empty() {
            facets_ok[si] = false;
            continue;
        }
        let expected: Vec<Vec<usize>> = if s.vertices.len() == 1 {
            Vec::new()
        } else {
            (0..s.vertices.len())
                .map(|i| {
                    s.vertices.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v).collect()
                })
                .collect()
        };
        for key in &expected {
            if !s.facets.contains_key(key) {
                facets_ok[si] = false;
                out.push(Violation {
                    rule: "facet-keys",
                    ids: vec![s.id.clone()],
                    message: format!("simplex `{}` lacks a facet on {{{}}}", s.id, names(mc, key)),
                });
            }
        }
        for (key, &t) in &s.facets {
            if !expected.contains(key) {
                facets_ok[si] = false;
                out.push(Violation {
                    rule: "facet-keys",
                    ids: vec![s.id.clone()],
                    message: format!(
                        "simplex `{}` has facet key {{{}}} which is not a codimension-one subset",
                        s.id,
                        names(mc, key)
                    ),
                });
            } else if &sims[t].vertices != key {
                facets_ok[si] = false;
                out.push(Violation {
                    rule: "facet-vertex-set",
                    ids: vec![s.id.clone(), sims[t].id.clone()],
                    message: format!(
                        "facet `{}` of `{}` spans {{{}}}, not {{{}}}",
                        sims[t].id,
                        s.id,
                        names(mc, &sims[t].vertices),
                        names(mc, key)
                    ),
                });
            }
        }
    }

    // Two-step facets A -> B -> C must not depend on the intermediate B.
    for (si, s) in sims.iter().enumerate() {
        if !facets_ok[si] || s.vertices.len() < 3 {
            continue;
        }
        let n = s.vertices.len();
        for i in 0..n {
            for j in (i + 1)..n {
                let via_i = two_step(mc, si, i, s.vertices[j], &facets_ok);
                let via_j = two_step(mc, si, j, s.vertices[i], &facets_ok);
                if let (Some(a), Some(b)) = (via_i, via_j) {
                    if a != b {
                        out.push(Violation {
                            rule: "composition",
                            ids: vec![s.id.clone(), sims[a].id.clone(), sims[b].id.clone()],
                            message: format!(
                                "face of `{}` without {{{}, {}}} is `{}` via one route and `{}` via the other",
                                s.id,
                                mc.vertex_name(s.vertices[i]),
                                mc.vertex_name(s.vertices[j]),
                                sims[a].id,
                                sims[b].id
                            ),
                        });
                    }
                }
            }
        }
    }

    ValidationReport::from_violations(out)
}

/// Removes the vertex at position `first` of `s`, then the vertex `then_remove`.
fn two_step(mc: &Multicomplex, s: usize, first: usize, then_remove: usize, ok: &[bool]) -> Option<usize> {
    let f = mc.facet(s, first)?;
    if !ok[f] {
        return None;
    }
    let pos = mc.simplex(f).vertices.iter().position(|&v| v == then_remove)?;
    mc.facet(f, pos)
}

fn names(mc: &Multicomplex, key: &[usize]) -> String {
    key.iter().map(|&v| mc.vertex_name(v)).collect::<Vec<_>>().join(",")
}
