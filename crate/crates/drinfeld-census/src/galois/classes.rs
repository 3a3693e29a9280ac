//! 2x2 matrices over A/ell, explicit subgroup closures, and the conjugacy
//! class table of SL_2(A/ell).
//!
//! Everything here is exhaustive: subgroup membership comes from a full
//! closure, SL2 containment from an exact element count, and class ids from
//! a complete orbit partition.  Class ids are assigned by ascending minimal
//! element key, so they are stable across runs and processes.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::{Arc, Mutex, OnceLock};

use super::resfield::ResidueField;
use crate::{Error, Result};

/// Row-major [[a, b], [c, d]] with entries as residue-field indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Mat2 {
    pub a: u16,
    pub b: u16,
    pub c: u16,
    pub d: u16,
}

impl Mat2 {
    pub fn new(a: u16, b: u16, c: u16, d: u16) -> Mat2 {
        Mat2 { a, b, c, d }
    }

    /// Element 1 always has index 1, whatever the field.
    pub fn identity() -> Mat2 {
        Mat2::new(1, 0, 0, 1)
    }

    /// Packed entry key; doubles as the canonical matrix order.
    pub fn key(&self) -> u64 {
        (self.a as u64) << 48 | (self.b as u64) << 32 | (self.c as u64) << 16 | self.d as u64
    }

    pub fn from_key(key: u64) -> Mat2 {
        Mat2::new(
            (key >> 48) as u16,
            (key >> 32 & 0xffff) as u16,
            (key >> 16 & 0xffff) as u16,
            (key & 0xffff) as u16,
        )
    }

    pub fn mul(&self, o: &Mat2, rf: &ResidueField) -> Mat2 {
        Mat2::new(
            rf.add(rf.mul(self.a, o.a), rf.mul(self.b, o.c)),
            rf.add(rf.mul(self.a, o.b), rf.mul(self.b, o.d)),
            rf.add(rf.mul(self.c, o.a), rf.mul(self.d, o.c)),
            rf.add(rf.mul(self.c, o.b), rf.mul(self.d, o.d)),
        )
    }

    pub fn det(&self, rf: &ResidueField) -> u16 {
        rf.sub(rf.mul(self.a, self.d), rf.mul(self.b, self.c))
    }

    pub fn trace(&self, rf: &ResidueField) -> u16 {
        rf.add(self.a, self.d)
    }

    pub fn inverse(&self, rf: &ResidueField) -> Result<Mat2> {
        let det = self.det(rf);
        if det == 0 {
            return Err(Error::SingularGenerator);
        }
        let i = rf.inv(det);
        Ok(Mat2::new(
            rf.mul(i, self.d),
            rf.mul(i, rf.neg(self.b)),
            rf.mul(i, rf.neg(self.c)),
            rf.mul(i, self.a),
        ))
    }

    /// (trace, det): the characteristic polynomial x^2 - tr x + det.
    pub fn char_poly(&self, rf: &ResidueField) -> (u16, u16) {
        (self.trace(rf), self.det(rf))
    }

    pub fn is_scalar(&self) -> bool {
        self.b == 0 && self.c == 0 && self.a == self.d
    }

    pub fn display(&self, rf: &ResidueField) -> String {
        format!(
            "[[{}, {}], [{}, {}]]",
            rf.display(self.a),
            rf.display(self.b),
            rf.display(self.c),
            rf.display(self.d)
        )
    }
}

/// An explicitly materialised matrix subgroup.
pub struct Subgroup {
    /// Closure in BFS discovery order (identity first).
    pub elems: Vec<Mat2>,
    keys: HashSet<u64>,
}

impl Subgroup {
    pub fn order(&self) -> u64 {
        self.elems.len() as u64
    }

    pub fn contains(&self, m: &Mat2) -> bool {
        self.keys.contains(&m.key())
    }
}

/// Exact closure cap: beyond this many elements the walk stops with
/// GroupTooLarge rather than exhausting memory.
const CLOSURE_CAP: usize = 1 << 24;

/// The subgroup of GL_2(A/ell) generated by the given invertible matrices,
/// materialised by breadth-first closure.
pub fn generated_subgroup(rf: &ResidueField, gens: &[Mat2]) -> Result<Subgroup> {
    for g in gens {
        if g.det(rf) == 0 {
            return Err(Error::SingularGenerator);
        }
    }
    let id = Mat2::identity();
    let mut keys = HashSet::new();
    keys.insert(id.key());
    let mut elems = vec![id];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.mul(g, rf);
            if keys.insert(y.key()) {
                if elems.len() == CLOSURE_CAP {
                    return Err(Error::GroupTooLarge(rf.q_l() as u64));
                }
                elems.push(y);
                queue.push_back(y);
            }
        }
    }
    Ok(Subgroup { elems, keys })
}

/// |SL_2(F)| = q_l^3 - q_l.
pub fn sl2_order(q_l: u32) -> u64 {
    let n = q_l as u64;
    n * n * n - n
}

/// Exact SL2 containment: the subgroup holds every determinant-1 matrix.
pub fn contains_sl2(rf: &ResidueField, sub: &Subgroup) -> bool {
    let count = sub.elems.iter().filter(|m| m.det(rf) == 1).count() as u64;
    debug_assert!(count <= sl2_order(rf.q_l()));
    count == sl2_order(rf.q_l())
}

#[derive(Clone, Debug)]
pub struct ClassInfo {
    pub id: u32,
    pub size: u64,
    /// Canonically minimal member.
    pub rep: Mat2,
}

/// Complete conjugacy-class partition of SL_2(A/ell).
pub struct ClassTable {
    q_l: u32,
    classes: Vec<ClassInfo>,
    class_of: HashMap<u64, u32>,
}

type TableKey = (u32, u32, Vec<u8>);
static TABLE_CACHE: OnceLock<Mutex<HashMap<TableKey, Arc<ClassTable>>>> = OnceLock::new();

/// Every element of SL_2, via d = (1 + bc)/a for a != 0 plus the a = 0 rim.
fn enumerate_sl2(rf: &ResidueField) -> Vec<Mat2> {
    let n = rf.q_l() as u16;
    let mut out = Vec::with_capacity(sl2_order(rf.q_l()) as usize);
    for a in 1..n {
        let ai = rf.inv(a);
        for b in 0..n {
            for c in 0..n {
                let d = rf.mul(ai, rf.add(1, rf.mul(b, c)));
                out.push(Mat2::new(a, b, c, d));
            }
        }
    }
    for b in 1..n {
        let c = rf.neg(rf.inv(b));
        for d in 0..n {
            out.push(Mat2::new(0, b, c, d));
        }
    }
    out
}

/// Elementary matrices E12(b), E21(b) over an F_p-basis of the residue
/// field.  They generate SL_2, so conjugating by them walks whole classes.
fn conjugation_generators(rf: &ResidueField) -> Vec<(Mat2, Mat2)> {
    let k = rf.base();
    let mut basis = Vec::new();
    for i in 0..k.e() {
        let c = k.pow(k.generator(), i as u64);
        for j in 0..rf.degree() {
            basis.push((c as u16) * (k.q() as u16).pow(j as u32));
        }
    }
    let mut gens = Vec::with_capacity(2 * basis.len());
    for &b in &basis {
        let e12 = Mat2::new(1, b, 0, 1);
        let e21 = Mat2::new(1, 0, b, 1);
        gens.push((e12, Mat2::new(1, rf.neg(b), 0, 1)));
        gens.push((e21, Mat2::new(1, 0, rf.neg(b), 1)));
    }
    gens
}

impl ClassTable {
    /// Build (or fetch from the per-field cache) the class table.
    pub fn cached(rf: &ResidueField) -> Result<Arc<ClassTable>> {
        let key: TableKey = (
            rf.base().p(),
            rf.base().e(),
            rf.prime().gen().coeffs().to_vec(),
        );
        let cache = TABLE_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(hit) = cache.lock().unwrap().get(&key) {
            return Ok(Arc::clone(hit));
        }
        let built = Arc::new(ClassTable::build(rf)?);
        cache
            .lock()
            .unwrap()
            .entry(key)
            .or_insert_with(|| Arc::clone(&built));
        Ok(built)
    }

    fn build(rf: &ResidueField) -> Result<ClassTable> {
        let order = sl2_order(rf.q_l());
        if order as usize > CLOSURE_CAP {
            return Err(Error::GroupTooLarge(rf.q_l() as u64));
        }
        let elems = enumerate_sl2(rf);
        debug_assert_eq!(elems.len() as u64, order);
        let gens = conjugation_generators(rf);
        let mut class_of: HashMap<u64, u32> = HashMap::with_capacity(elems.len());
        // (min key, size) per orbit, in discovery order.
        let mut raw: Vec<(u64, u64)> = Vec::new();
        for m in &elems {
            if class_of.contains_key(&m.key()) {
                continue;
            }
            let id = raw.len() as u32;
            let mut min_key = m.key();
            let mut size = 1u64;
            class_of.insert(m.key(), id);
            let mut queue = VecDeque::from([*m]);
            while let Some(x) = queue.pop_front() {
                for (g, gi) in &gens {
                    let y = gi.mul(&x, rf).mul(g, rf);
                    if let std::collections::hash_map::Entry::Vacant(e) =
                        class_of.entry(y.key())
                    {
                        e.insert(id);
                        size += 1;
                        min_key = min_key.min(y.key());
                        queue.push_back(y);
                    }
                }
            }
            raw.push((min_key, size));
        }
        debug_assert_eq!(raw.iter().map(|r| r.1).sum::<u64>(), order);
        // Stable ids: ascending minimal key.
        let mut order_ix: Vec<usize> = (0..raw.len()).collect();
        order_ix.sort_by_key(|&i| raw[i].0);
        let mut remap = vec![0u32; raw.len()];
        let mut classes = Vec::with_capacity(raw.len());
        for (new_id, &old) in order_ix.iter().enumerate() {
            remap[old] = new_id as u32;
            classes.push(ClassInfo {
                id: new_id as u32,
                size: raw[old].1,
                rep: Mat2::from_key(raw[old].0),
            });
        }
        for v in class_of.values_mut() {
            *v = remap[*v as usize];
        }
        Ok(ClassTable {
            q_l: rf.q_l(),
            classes,
            class_of,
        })
    }

    pub fn q_l(&self) -> u32 {
        self.q_l
    }

    pub fn sl2_order(&self) -> u64 {
        sl2_order(self.q_l)
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[ClassInfo] {
        &self.classes
    }

    /// Class id of a determinant-1 matrix; None otherwise.
    pub fn class_of(&self, m: &Mat2) -> Option<u32> {
        self.class_of.get(&m.key()).copied()
    }

    /// Which classes a set of matrices touches (det-1 members only).
    pub fn coverage<'a>(&self, elems: impl Iterator<Item = &'a Mat2>) -> Vec<bool> {
        let mut seen = vec![false; self.classes.len()];
        for m in elems {
            if let Some(id) = self.class_of(m) {
                seen[id as usize] = true;
            }
        }
        seen
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;
    use crate::poly::PrimeIdeal;
    use rand::{RngExt, SeedableRng};

    fn rf(p: u32, e: u32, ell: &str) -> ResidueField {
        let k = FieldCtx::new(p, e).unwrap();
        ResidueField::new(&k, &PrimeIdeal::parse(ell, &k).unwrap()).unwrap()
    }

    #[test]
    fn sl2_class_fixtures() {
        // SL2(F4) has order 60 and 5 classes; SL2(F5) order 120 and 9.
        let r4 = rf(2, 2, "T");
        let t4 = ClassTable::cached(&r4).unwrap();
        assert_eq!(t4.sl2_order(), 60);
        assert_eq!(t4.num_classes(), 5);
        let mut sizes: Vec<u64> = t4.classes().iter().map(|c| c.size).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 12, 12, 15, 20]);

        let r5 = rf(5, 1, "T");
        let t5 = ClassTable::cached(&r5).unwrap();
        assert_eq!(t5.sl2_order(), 120);
        assert_eq!(t5.num_classes(), 9);
        let mut sizes: Vec<u64> = t5.classes().iter().map(|c| c.size).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 1, 12, 12, 12, 12, 20, 20, 30]);
        // The identity is alone in its class.
        let id_class = t5.class_of(&Mat2::identity()).unwrap();
        assert_eq!(t5.classes()[id_class as usize].size, 1);
        assert_eq!(t5.classes()[id_class as usize].rep, Mat2::identity());
        // Ids follow ascending representative keys.
        let keys: Vec<u64> = t5.classes().iter().map(|c| c.rep.key()).collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn classes_partition_sl2() {
        let r = rf(5, 1, "T");
        let table = ClassTable::cached(&r).unwrap();
        let mut total = 0u64;
        for m in enumerate_sl2(&r) {
            assert_eq!(m.det(&r), 1);
            assert!(table.class_of(&m).is_some());
            total += 1;
        }
        assert_eq!(total, table.sl2_order());
        assert_eq!(
            table.classes().iter().map(|c| c.size).sum::<u64>(),
            table.sl2_order()
        );
        // Representatives belong to their own class.
        for c in table.classes() {
            assert_eq!(table.class_of(&c.rep), Some(c.id));
        }
    }

    #[test]
    fn class_ids_are_conjugation_invariant() {
        // Independent oracle: conjugating by arbitrary SL2 elements never
        // changes the class id.
        for (p, e) in [(2, 2), (5, 1)] {
            let r = rf(p, e, "T");
            let table = ClassTable::cached(&r).unwrap();
            let all = enumerate_sl2(&r);
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
            for _ in 0..200 {
                let x = all[rng.random_range(0..all.len())];
                let g = all[rng.random_range(0..all.len())];
                let y = g.inverse(&r).unwrap().mul(&x, &r).mul(&g, &r);
                assert_eq!(table.class_of(&x), table.class_of(&y));
            }
        }
    }

    #[test]
    fn subgroup_closure_and_sl2_test() {
        let r = rf(5, 1, "T");
        // The two elementary matrices generate all of SL2(F5).
        let gens = [Mat2::new(1, 1, 0, 1), Mat2::new(1, 0, 1, 1)];
        let sub = generated_subgroup(&r, &gens).unwrap();
        assert_eq!(sub.order(), 120);
        assert!(contains_sl2(&r, &sub));
        // A diagonal torus element generates a cyclic group of order 4.
        let torus = [Mat2::new(2, 0, 0, 3)];
        let sub = generated_subgroup(&r, &torus).unwrap();
        assert_eq!(sub.order(), 4);
        assert!(!contains_sl2(&r, &sub));
        // Identity alone.
        let sub = generated_subgroup(&r, &[Mat2::identity()]).unwrap();
        assert_eq!(sub.order(), 1);
        // Adding a determinant-2 matrix on top of SL2 gives order 240.
        let gl = [Mat2::new(1, 1, 0, 1), Mat2::new(1, 0, 1, 1), Mat2::new(2, 0, 0, 1)];
        let sub = generated_subgroup(&r, &gl).unwrap();
        assert_eq!(sub.order(), 480);
        assert!(contains_sl2(&r, &sub));
        assert!(matches!(
            generated_subgroup(&r, &[Mat2::new(1, 1, 1, 1)]),
            Err(Error::SingularGenerator)
        ));
    }

    #[test]
    fn matrix_ops_fixtures() {
        let r = rf(5, 1, "T");
        let m = Mat2::new(2, 1, 4, 3);
        assert_eq!(m.det(&r), 2); // 6 - 4
        assert_eq!(m.trace(&r), 0);
        let mi = m.inverse(&r).unwrap();
        assert_eq!(m.mul(&mi, &r), Mat2::identity());
        assert_eq!(mi.mul(&m, &r), Mat2::identity());
        assert_eq!(Mat2::from_key(m.key()), m);
        assert_eq!(m.char_poly(&r), (0, 2));
        assert!(!m.is_scalar());
        assert!(Mat2::new(3, 0, 0, 3).is_scalar());
    }

    #[test]
    fn coverage_marks_touched_classes() {
        let r = rf(5, 1, "T");
        let table = ClassTable::cached(&r).unwrap();
        let id = Mat2::identity();
        let uni = Mat2::new(1, 1, 0, 1);
        let cov = table.coverage([id, uni, Mat2::new(2, 0, 0, 1)].iter());
        assert!(cov[table.class_of(&id).unwrap() as usize]);
        assert!(cov[table.class_of(&uni).unwrap() as usize]);
        // The det-2 matrix is ignored, so exactly two classes are covered.
        assert_eq!(cov.iter().filter(|&&b| b).count(), 2);
    }
}
