use alloc::vec;
use alloc::vec::Vec;

use super::{decode_tuple, ElementMap, FiniteAlgebra};
use crate::error::Result;

const UNSET: usize = usize::MAX;

struct Search<'a> {
    a: &'a FiniteAlgebra,
    b: &'a FiniteAlgebra,
    // (op index in a, op index in b)
    ops: Vec<(usize, usize)>,
    forward: Vec<usize>,
    backward: Vec<usize>,
    assigned: Vec<usize>,
}

impl Search<'_> {
    fn assign(&mut self, x: usize, y: usize, trail: &mut Vec<usize>) -> bool {
        if self.forward[x] != UNSET {
            return self.forward[x] == y;
        }
        if self.backward[y] != UNSET {
            return false;
        }
        self.forward[x] = y;
        self.backward[y] = x;
        self.assigned.push(x);
        trail.push(x);
        true
    }

    fn undo(&mut self, trail: &[usize]) {
        for &x in trail.iter().rev() {
            let y = self.forward[x];
            self.forward[x] = UNSET;
            self.backward[y] = UNSET;
            let popped = self.assigned.pop();
            debug_assert_eq!(popped, Some(x));
        }
    }

    /// Checks every fully assigned argument tuple touching a newly assigned
    /// element, forcing images of results that are still unassigned.
    fn propagate(&mut self, trail: &mut Vec<usize>, mut cursor: usize) -> bool {
        let (na, nb) = (self.a.size, self.b.size);
        while cursor < trail.len() {
            let fresh = trail[cursor];
            cursor += 1;
            for t in 0..self.ops.len() {
                let (i, j) = self.ops[t];
                let arity = self.a.ops[i].arity;
                if arity == 0 {
                    continue;
                }
                let pool = self.assigned.clone();
                let m = pool.len();
                let combos = super::table_len(m, arity);
                let mut picks = vec![0; arity];
                let mut args = vec![0; arity];
                let mut mapped = vec![0; arity];
                for c in 0..combos {
                    decode_tuple(c, m, &mut picks);
                    let mut touches = false;
                    for k in 0..arity {
                        args[k] = pool[picks[k]];
                        touches |= args[k] == fresh;
                        mapped[k] = self.forward[args[k]];
                    }
                    if !touches {
                        continue;
                    }
                    let r = self.a.ops[i].apply(na, &args);
                    let s = self.b.ops[j].apply(nb, &mapped);
                    if !self.assign(r, s, trail) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn solve(&mut self) -> bool {
        let Some(x) = (0..self.a.size).find(|&x| self.forward[x] == UNSET) else {
            return true;
        };
        for y in 0..self.b.size {
            if self.backward[y] != UNSET {
                continue;
            }
            let mut trail = Vec::new();
            let ok = self.assign(x, y, &mut trail) && self.propagate(&mut trail, 0);
            if ok && self.solve() {
                return true;
            }
            self.undo(&trail);
        }
        false
    }
}

/// A bijective homomorphism `A → B`, if one exists.
///
/// Plain backtracking over `0, 1, ...` in order with forward checking on the
/// operation tables; the first solution in that order is returned, so the
/// result is deterministic.
pub fn find_isomorphism(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<Option<ElementMap>> {
    let ops = a.align(b)?;
    if a.size != b.size {
        return Ok(None);
    }
    let n = a.size;
    let mut search = Search {
        a,
        b,
        ops,
        forward: vec![UNSET; n],
        backward: vec![UNSET; n],
        assigned: Vec::new(),
    };
    let mut trail = Vec::new();
    for t in 0..search.ops.len() {
        let (i, j) = search.ops[t];
        if a.ops[i].arity == 0 {
            let (ca, cb) = (a.ops[i].table[0], b.ops[j].table[0]);
            if !search.assign(ca, cb, &mut trail) {
                return Ok(None);
            }
        }
    }
    if !search.propagate(&mut trail, 0) || !search.solve() {
        return Ok(None);
    }
    Ok(Some(ElementMap {
        target_size: n,
        values: search.forward,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{is_homomorphism, product};
    use crate::catalog;

    #[test]
    fn z2_times_z3_is_z6() {
        let (p, _, _) = product(&catalog::cyclic_group(2), &catalog::cyclic_group(3)).unwrap();
        let z6 = catalog::cyclic_group(6);
        let f = find_isomorphism(&p, &z6).unwrap().expect("isomorphic");
        assert!(f.is_bijective());
        assert!(is_homomorphism(&p, &z6, &f).unwrap());
    }

    #[test]
    fn z4_is_not_klein() {
        let z4 = catalog::cyclic_group(4);
        let k = catalog::klein_four();
        assert_eq!(find_isomorphism(&z4, &k).unwrap(), None);
        assert_eq!(find_isomorphism(&k, &z4).unwrap(), None);
    }

    #[test]
    fn self_isomorphism_is_identity() {
        for a in [
            catalog::symmetric_group_3(),
            catalog::klein_four(),
            catalog::boolean_lattice_4(),
        ] {
            let f = find_isomorphism(&a, &a).unwrap().unwrap();
            assert_eq!(f, ElementMap::identity(a.size()));
        }
    }

    #[test]
    fn different_sizes_are_not_isomorphic() {
        let z2 = catalog::cyclic_group(2);
        let z3 = catalog::cyclic_group(3);
        assert_eq!(find_isomorphism(&z2, &z3).unwrap(), None);
    }

    #[test]
    fn constants_are_respected() {
        use crate::algebra::Operation;
        let a = FiniteAlgebra::new(
            "a",
            2,
            vec![
                Operation::new("c", 0, vec![0]),
                Operation::new("f", 1, vec![1, 0]),
            ],
        )
        .unwrap();
        let b = FiniteAlgebra::new(
            "b",
            2,
            vec![
                Operation::new("f", 1, vec![1, 0]),
                Operation::new("c", 0, vec![1]),
            ],
        )
        .unwrap();
        let f = find_isomorphism(&a, &b).unwrap().unwrap();
        assert_eq!(f.values(), &[1, 0]);
    }
}
