use std::collections::BTreeMap;

use super::ChainError;
use crate::mcx::Multicomplex;

/// A simplex-like cell with labelled corners whose codimension-one faces are glued to other
/// cells through explicit corner bijections.
///
/// Multicomplex simplices are cells whose corner maps are identities; Δ-complexes with
/// identified vertices need the general maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    /// Corner labels, ascending.
    pub corners: Vec<usize>,
    /// For each codimension-one subset of corners: the face cell and the image of each corner of
    /// the subset (in subset order) among the face cell's corners.
    pub facets: BTreeMap<Vec<usize>, (usize, Vec<usize>)>,
}

/// A finite collection of [`Cell`]s: the input of every chain complex builder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellComplex {
    pub cell_names: Vec<String>,
    pub corner_names: Vec<String>,
    pub cells: Vec<Cell>,
}

impl CellComplex {
    pub fn new(cell_names: Vec<String>, corner_names: Vec<String>, cells: Vec<Cell>) -> Result<Self, ChainError> {
        if cell_names.len() != cells.len() {
            return Err(ChainError::Precondition("one name per cell is required".into()));
        }
        for (ci, c) in cells.iter().enumerate() {
            let bad = |m: &str| ChainError::Precondition(format!("cell `{}`: {m}", cell_names[ci]));
            if c.corners.is_empty() || c.corners.windows(2).any(|w| w[0] >= w[1]) {
                return Err(bad("corners must be ascending and distinct"));
            }
            if c.corners.iter().any(|&v| v >= corner_names.len()) {
                return Err(bad("unknown corner"));
            }
            let expected = if c.corners.len() == 1 { 0 } else { c.corners.len() };
            if c.facets.len() != expected {
                return Err(bad("needs exactly one facet per codimension-one subset"));
            }
            for (key, (t, img)) in &c.facets {
                if key.len() + 1 != c.corners.len() || key.iter().any(|v| c.corners.binary_search(v).is_err()) {
                    return Err(bad("facet key is not a codimension-one subset"));
                }
                let target = cells.get(*t).ok_or_else(|| bad("facet refers to an unknown cell"))?;
                let mut sorted = img.clone();
                sorted.sort_unstable();
                if img.len() != key.len() || sorted != target.corners {
                    return Err(bad("facet corner map is not a bijection onto the face"));
                }
            }
        }
        Ok(Self { cell_names, corner_names, cells })
    }

    pub fn from_multicomplex(mc: &Multicomplex) -> Self {
        let cells = mc
            .simplices()
            .iter()
            .map(|s| Cell {
                corners: s.vertices.clone(),
                facets: s.facets.iter().map(|(k, &t)| (k.clone(), (t, k.clone()))).collect(),
            })
            .collect();
        Self {
            cell_names: mc.simplices().iter().map(|s| s.id.clone()).collect(),
            corner_names: mc.vertex_names().to_vec(),
            cells,
        }
    }

    /// Face of `cell` on the corner subset `subset` (any order, distinct), together with the
    /// images of the entries of `subset` among the face's corners.
    pub fn face(&self, cell: usize, subset: &[usize]) -> (usize, Vec<usize>) {
        let mut cur = cell;
        let mut labels = subset.to_vec();
        loop {
            let corners = &self.cells[cur].corners;
            let mut set = labels.clone();
            set.sort_unstable();
            if &set == corners {
                return (cur, labels);
            }
            let drop = *corners
                .iter()
                .find(|c| set.binary_search(c).is_err())
                .expect("subset lies inside the cell");
            let key: Vec<usize> = corners.iter().copied().filter(|&c| c != drop).collect();
            let (t, img) = &self.cells[cur].facets[&key];
            for l in labels.iter_mut() {
                let pos = key.binary_search(l).expect("subset lies inside the facet");
                *l = img[pos];
            }
            cur = *t;
        }
    }

    pub fn dim(&self) -> Option<usize> {
        self.cells.iter().map(|c| c.corners.len() - 1).max()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mcx::special_sphere;

    #[test]
    fn multicomplex_faces_are_identity_relabelled() {
        let mc = special_sphere(2, &["a", "b", "c"]).unwrap();
        let cx = CellComplex::from_multicomplex(&mc);
        let north = mc.simplex_ix("a,b,c#n").unwrap();
        let (f, img) = cx.face(north, &[2, 0]);
        assert_eq!(mc.simplex(f).id, "a,c");
        assert_eq!(img, vec![2, 0]);
    }

    #[test]
    fn corner_maps_compose() {
        // A triangle whose three edges are one loop edge glued with rotations.
        let cells = vec![
            Cell { corners: vec![0], facets: BTreeMap::new() },
            Cell {
                corners: vec![0, 1],
                facets: BTreeMap::from([(vec![0], (0, vec![0])), (vec![1], (0, vec![0]))]),
            },
        ];
        let cx = CellComplex::new(vec!["v".into(), "e".into()], vec!["0".into(), "1".into()], cells).unwrap();
        assert_eq!(cx.face(1, &[1]), (0, vec![0]));
        assert_eq!(cx.face(1, &[1, 0]), (1, vec![1, 0]));
    }
}
