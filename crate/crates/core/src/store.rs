//! Named parameter store: the flattened view of a model's weights.
//!
//! Iteration is always in ascending lexicographic name order, which fixes the
//! global coordinate numbering used by masks, checkpoints, and optimizers.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::tensor::Tensor;

/// Ordered map from layer name to tensor.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ParamStore {
    map: BTreeMap<String, Tensor>,
}

impl ParamStore {
    pub fn new() -> Self {
        ParamStore { map: BTreeMap::new() }
    }

    /// Inserts a named tensor; names must be unique.
    pub fn insert(&mut self, name: impl Into<String>, tensor: Tensor) -> Result<()> {
        let name = name.into();
        if self.map.contains_key(&name) {
            return Err(Error::structure("ParamStore::insert", format!("duplicate name {name:?}")));
        }
        self.map.insert(name, tensor);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&Tensor> {
        self.map.get(name)
    }

    pub fn get_mut(&mut self, name: &str) -> Option<&mut Tensor> {
        self.map.get_mut(name)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Layers in ascending lexicographic name order.
    pub fn iter(&self) -> impl Iterator<Item = (&String, &Tensor)> {
        self.map.iter()
    }

    pub fn iter_mut(&mut self) -> impl Iterator<Item = (&String, &mut Tensor)> {
        self.map.iter_mut()
    }

    pub fn names(&self) -> impl Iterator<Item = &String> {
        self.map.keys()
    }

    /// Total element count across all layers (the dimension `d`).
    pub fn total_dim(&self) -> usize {
        self.map.values().map(Tensor::len).sum()
    }

    /// A store with the same names and shapes, all zeros.
    pub fn zeros_like(&self) -> ParamStore {
        let map = self
            .map
            .iter()
            .map(|(n, t)| (n.clone(), Tensor::zeros(t.shape().to_vec())))
            .collect();
        ParamStore { map }
    }

    /// Checks that `other` has identical names and shapes, naming the first
    /// offending layer otherwise.
    pub fn check_same_structure(&self, other: &ParamStore) -> Result<()> {
        for (name, t) in &self.map {
            match other.map.get(name) {
                None => {
                    return Err(Error::structure("ParamStore", format!("layer {name:?} missing")))
                }
                Some(o) if o.shape() != t.shape() => {
                    return Err(Error::structure(
                        "ParamStore",
                        format!(
                            "layer {name:?} has shape {:?}, expected {:?}",
                            o.shape(),
                            t.shape()
                        ),
                    ));
                }
                _ => {}
            }
        }
        if let Some(extra) = other.map.keys().find(|k| !self.map.contains_key(*k)) {
            return Err(Error::structure("ParamStore", format!("unexpected layer {extra:?}")));
        }
        Ok(())
    }

    /// In-place `self += alpha * src`, layer-wise in name order.
    ///
    /// Terms that are exactly zero are skipped, so entries untouched by the
    /// direction keep their bit pattern (including signed zeros).
    pub fn axpy(&mut self, alpha: f64, src: &ParamStore) -> Result<()> {
        self.check_same_structure(src)?;
        for (name, dst) in self.map.iter_mut() {
            let s = src.map.get(name).expect("structure checked");
            for (d, &z) in dst.data_mut().iter_mut().zip(s.data()) {
                let term = alpha * z;
                if term != 0.0 {
                    *d += term;
                }
            }
        }
        Ok(())
    }

    /// Inner product over all coordinates, accumulated in f64 in name order.
    pub fn dot(&self, other: &ParamStore) -> Result<f64> {
        self.check_same_structure(other)?;
        let mut acc = 0.0;
        for (name, a) in &self.map {
            let b = other.map.get(name).expect("structure checked");
            for (x, y) in a.data().iter().zip(b.data()) {
                acc += x * y;
            }
        }
        Ok(acc)
    }

    /// Sum of squares of all entries.
    pub fn norm_sq(&self) -> f64 {
        self.map.values().flat_map(|t| t.data()).map(|v| v * v).sum()
    }

    /// Starting flat offset of each layer in lexicographic order.
    pub fn layer_offsets(&self) -> BTreeMap<String, usize> {
        let mut offsets = BTreeMap::new();
        let mut acc = 0usize;
        for (name, t) in &self.map {
            offsets.insert(name.clone(), acc);
            acc += t.len();
        }
        offsets
    }
}

impl FromIterator<(String, Tensor)> for ParamStore {
    fn from_iter<I: IntoIterator<Item = (String, Tensor)>>(iter: I) -> Self {
        ParamStore { map: iter.into_iter().collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn store(pairs: &[(&str, &[f64])]) -> ParamStore {
        let mut s = ParamStore::new();
        for (n, v) in pairs {
            s.insert(*n, Tensor::vector(v)).unwrap();
        }
        s
    }

    #[test]
    fn iteration_is_lexicographic() {
        let s = store(&[("b", &[1.0]), ("a", &[2.0]), ("c", &[3.0])]);
        let names: Vec<_> = s.names().cloned().collect();
        assert_eq!(names, ["a", "b", "c"]);
    }

    #[test]
    fn duplicate_names_rejected() {
        let mut s = ParamStore::new();
        s.insert("w", Tensor::vector(&[1.0])).unwrap();
        assert!(s.insert("w", Tensor::vector(&[2.0])).is_err());
    }

    #[test]
    fn axpy_zero_alpha_is_bitwise_identity() {
        let mut s = store(&[("w", &[1.5, -0.0, 2.5])]);
        let src = store(&[("w", &[9.0, 9.0, 9.0])]);
        let before: Vec<u64> = s.get("w").unwrap().data().iter().map(|v| v.to_bits()).collect();
        s.axpy(0.0, &src).unwrap();
        let after: Vec<u64> = s.get("w").unwrap().data().iter().map(|v| v.to_bits()).collect();
        assert_eq!(before, after);
    }

    #[test]
    fn axpy_doubles_and_cancels() {
        let mut s = store(&[("w", &[1.0, -2.0, 3.0])]);
        let copy = s.clone();
        s.axpy(1.0, &copy).unwrap();
        assert_eq!(s.get("w").unwrap().data(), &[2.0, -4.0, 6.0]);
        let mut t = store(&[("w", &[1.0, -2.0, 3.0])]);
        let copy = t.clone();
        t.axpy(-1.0, &copy).unwrap();
        assert_eq!(t.get("w").unwrap().data(), &[0.0, 0.0, 0.0]);
    }

    #[test]
    fn axpy_then_inverse_restores_bitwise() {
        let mut s = store(&[("a", &[0.1, 0.25, -1.75]), ("b", &[3.5])]);
        let orig = s.clone();
        let dir = store(&[("a", &[0.3, -0.125, 0.5]), ("b", &[-2.25])]);
        s.axpy(0.625, &dir).unwrap();
        s.axpy(-0.625, &dir).unwrap();
        // alpha*z and -(alpha*z) are exact negations, so add-then-subtract of
        // the identical magnitude restores every entry bitwise.
        for (name, t) in orig.iter() {
            let got = s.get(name).unwrap();
            let a: Vec<u64> = t.data().iter().map(|v| v.to_bits()).collect();
            let b: Vec<u64> = got.data().iter().map(|v| v.to_bits()).collect();
            assert_eq!(a, b, "layer {name}");
        }
    }

    #[test]
    fn dot_hand_cases() {
        let e0 = store(&[("w", &[1.0, 0.0, 0.0])]);
        assert_eq!(e0.dot(&e0).unwrap(), 1.0);
        let e1 = store(&[("w", &[0.0, 1.0, 0.0])]);
        assert_eq!(e0.dot(&e1).unwrap(), 0.0);
        let a = store(&[("w", &[1.0, 2.0, 3.0])]);
        let b = store(&[("w", &[4.0, 5.0, 6.0])]);
        assert_eq!(a.dot(&b).unwrap(), 32.0);
    }

    #[test]
    fn structural_mismatch_names_offender() {
        let a = store(&[("w", &[1.0])]);
        let b = store(&[("v", &[1.0])]);
        let err = a.dot(&b).unwrap_err();
        assert!(err.to_string().contains('w') || err.to_string().contains('v'));
    }
}
