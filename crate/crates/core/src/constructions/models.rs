use crate::error::{Error, Result};
use crate::invariants::SimplicialComplex;
use crate::poset::Poset;

/// Minimal finite models of `S^1` (four points `C, D < A, B`) and `S^2`
/// (six points, one more level `E, F` below `C, D`).
pub fn minimal_sphere_model(dim: u32) -> Result<Poset> {
    let mut elements = vec!["A", "B", "C", "D"];
    let mut covers = vec![("C", "A"), ("C", "B"), ("D", "A"), ("D", "B")];
    match dim {
        1 => {}
        2 => {
            elements.extend(["E", "F"]);
            covers.extend([("E", "C"), ("E", "D"), ("F", "C"), ("F", "D")]);
        }
        d => return Err(Error::UnsupportedDimension(d)),
    }
    Poset::new(&elements, &covers)
}

/// The poset of simplices of `k` ordered by inclusion. A simplex is labeled
/// by its vertex labels, e.g. `{a,b}`.
pub fn face_poset(k: &SimplicialComplex) -> Result<Poset> {
    let labels: Vec<String> = k
        .simplices()
        .iter()
        .map(|s| {
            let names: Vec<&str> = s.iter().map(|&v| k.vertices()[v as usize].as_str()).collect();
            format!("{{{}}}", names.join(","))
        })
        .collect();
    let index = k.index_map();
    let mut covers = Vec::new();
    for (i, s) in k.simplices().iter().enumerate() {
        if s.len() < 2 {
            continue;
        }
        for j in 0..s.len() {
            let mut f = s.clone();
            f.remove(j);
            let fi = *index
                .get(f.as_slice())
                .ok_or_else(|| Error::NotAComplex(format!("face {f:?} missing")))?;
            covers.push((fi, i));
        }
    }
    Poset::from_covers_indexed(labels, &covers)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spheres() {
        assert_eq!(minimal_sphere_model(1).unwrap().len(), 4);
        assert_eq!(minimal_sphere_model(2).unwrap().len(), 6);
        assert_eq!(minimal_sphere_model(3).unwrap_err(), Error::UnsupportedDimension(3));
    }

    #[test]
    fn edge_face_poset() {
        let k = SimplicialComplex::new(
            vec!["a".into(), "b".into()],
            vec![vec![0], vec![1], vec![0, 1]],
        )
        .unwrap();
        let p = face_poset(&k).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p.num_covers(), 2);
        assert!(p.index_of("{a,b}").is_some());
        assert!(face_poset(&SimplicialComplex::empty()).unwrap().is_empty());
    }
}
