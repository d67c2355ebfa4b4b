//! Explicit generating sets for the affine point stabilisers, brute-force
//! isometry and similarity groups, and orbit computation by closure.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

use crate::classify::SubfieldClassifier;
use crate::error::{Error, Result};
use crate::field::{Fe, Field, Subfield};
use crate::forms::{ClassicalForm, FormKind};
use crate::linalg::{prime_span_key, Matrix, SemilinearMap};
use crate::space::VectorSpace;

/// Largest `q^(n^2)` for which form groups are enumerated.
pub const BRUTE_FORCE_CAP: u64 = 1 << 24;

/// Largest number of elements [`enumerate_group`] will collect.
pub const GROUP_ENUM_CAP: usize = 1 << 21;

#[derive(Clone, Debug)]
pub struct GroupSpec {
    pub name: String,
    pub space: Arc<VectorSpace>,
    pub generators: Vec<SemilinearMap>,
}

impl GroupSpec {
    pub fn field(&self) -> &Field {
        self.space.field()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Same group without its field-automorphism generators.
    pub fn linear_part(&self) -> GroupSpec {
        GroupSpec {
            name: format!("{} (linear)", self.name),
            space: self.space.clone(),
            generators: self.generators.iter().filter(|g| g.frob == 0).cloned().collect(),
        }
    }

    pub fn image(&self, g: &SemilinearMap, idx: u32, buf: &mut [Fe]) -> u32 {
        self.space.write_vector(idx, buf);
        let w = g.apply_unchecked(buf, self.space.field());
        self.space.index(&w)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPartition {
    /// Orbit id of each vector index; `u32::MAX` for the zero vector.
    pub orbit_of: Vec<u32>,
    /// Smallest index in each orbit; orbits are numbered in increasing order of it.
    pub reps: Vec<u32>,
    pub sizes: Vec<u64>,
}

impl OrbitPartition {
    pub fn count(&self) -> usize {
        self.reps.len()
    }

    pub fn members(&self, id: u32) -> Vec<u32> {
        (0..self.orbit_of.len() as u32).filter(|&i| self.orbit_of[i as usize] == id).collect()
    }

    pub fn all_members(&self) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new(); self.count()];
        for (i, &o) in self.orbit_of.iter().enumerate() {
            if o != u32::MAX {
                out[o as usize].push(i as u32);
            }
        }
        out
    }
}

fn check_vector(group: &GroupSpec, v: u32) -> Result<()> {
    if v == 0 {
        return Err(Error::ZeroVector);
    }
    if v >= group.space.size() {
        return Err(Error::InvalidParameters(format!("vector index {v} out of range")));
    }
    Ok(())
}

pub fn orbit_closure(group: &GroupSpec, v: u32) -> Result<Vec<u32>> {
    check_vector(group, v)?;
    let mut seen = HashSet::from([v]);
    let mut queue = VecDeque::from([v]);
    let mut buf = vec![Fe::ZERO; group.dim()];
    while let Some(x) = queue.pop_front() {
        for g in &group.generators {
            let y = group.image(g, x, &mut buf);
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    let mut out: Vec<u32> = seen.into_iter().collect();
    out.sort_unstable();
    Ok(out)
}

pub fn all_orbits(group: &GroupSpec) -> OrbitPartition {
    let size = group.space.size() as usize;
    let mut orbit_of = vec![u32::MAX; size];
    let (mut reps, mut sizes) = (Vec::new(), Vec::new());
    let mut buf = vec![Fe::ZERO; group.dim()];
    let mut stack = Vec::new();
    for seed in 1..size as u32 {
        if orbit_of[seed as usize] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(seed);
        orbit_of[seed as usize] = id;
        stack.push(seed);
        let mut count = 1u64;
        while let Some(x) = stack.pop() {
            for g in &group.generators {
                let y = group.image(g, x, &mut buf);
                if orbit_of[y as usize] == u32::MAX {
                    orbit_of[y as usize] = id;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        sizes.push(count);
    }
    OrbitPartition { orbit_of, reps, sizes }
}

/// All elements of the group generated by `gens`.
pub fn enumerate_group(gens: &[SemilinearMap], f: &Field) -> Result<Vec<SemilinearMap>> {
    let Some(first) = gens.first() else {
        return Err(Error::InvalidParameters("no generators".into()));
    };
    let id = SemilinearMap::identity(first.dim(), f);
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.then(g, f)?;
            if !seen.contains(&y) {
                if seen.len() >= GROUP_ENUM_CAP {
                    return Err(Error::CapExceeded { what: "group enumeration", size: seen.len() as u64, cap: GROUP_ENUM_CAP as u64 });
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

pub fn group_order(gens: &[SemilinearMap], f: &Field) -> Result<u64> {
    Ok(enumerate_group(gens, f)?.len() as u64)
}

// Generating sets for classical groups over a subfield of `f`.

/// Generators of GL(n, q0) for the subfield `sub` of `f`: a diagonal map
/// with a primitive subfield element in the corner, a signed cyclic
/// companion map, and (over GF(2)) one elementary transvection.
pub fn gl_generators(n: usize, f: &Field, sub: Subfield) -> Vec<Matrix> {
    let one = f.one();
    let zeta = f.subfield_primitive(sub);
    let mut a = Matrix::identity(n, f);
    a.set(0, 0, zeta);
    if n == 1 {
        return vec![a];
    }
    let minus = f.neg(one);
    let mut b = Matrix::zeros(n, n);
    b.set(0, 0, minus);
    b.set(0, n - 1, one);
    for i in 1..n {
        b.set(i, i - 1, minus);
    }
    let mut gens = vec![a, b];
    if sub.order == 2 {
        let mut t = Matrix::identity(n, f);
        t.set(0, 1, one);
        gens.push(t);
    }
    gens
}

/// Symplectic transvections `v -> v + c f(v, w) w` for `w` ranging over the
/// basis vectors and their pairwise sums, and `c` over a GF(p)-basis of the
/// subfield. `gram` is the Gram matrix of the alternating form.
pub fn symplectic_transvections(gram: &Matrix, f: &Field, sub: Subfield) -> Vec<Matrix> {
    let n = gram.rows();
    let coeffs = f.subfield_prime_basis(sub);
    let mut ws: Vec<Vec<Fe>> = Vec::new();
    for i in 0..n {
        let mut w = vec![Fe::ZERO; n];
        w[i] = f.one();
        ws.push(w);
        for j in i + 1..n {
            let mut w = vec![Fe::ZERO; n];
            w[i] = f.one();
            w[j] = f.one();
            ws.push(w);
        }
    }
    let mut out = Vec::new();
    for w in &ws {
        let col: Vec<Fe> = (0..n).map(|i| (0..n).fold(Fe::ZERO, |acc, j| f.add(acc, f.mul(gram.get(i, j), w[j])))).collect();
        for &c in &coeffs {
            out.push(Matrix::from_fn(n, n, |i, j| {
                let base = if i == j { f.one() } else { Fe::ZERO };
                f.add(base, f.mul(c, f.mul(col[i], w[j])))
            }));
        }
    }
    out
}

/// Standard alternating Gram matrix `[[0, I], [-I, 0]]` of size `n`.
pub fn standard_symplectic_gram(n: usize, f: &Field) -> Matrix {
    let m = n / 2;
    let mut g = Matrix::zeros(n, n);
    for i in 0..m {
        g.set(i, m + i, f.one());
        g.set(m + i, i, f.neg(f.one()));
    }
    g
}

/// `diag(mu, .., mu, 1, .., 1)` on a standard symplectic basis: a similarity
/// with multiplier `mu`.
pub fn symplectic_delta(n: usize, mu: Fe, f: &Field) -> Matrix {
    let m = n / 2;
    Matrix::from_fn(n, n, |i, j| match (i == j, i < m) {
        (true, true) => mu,
        (true, false) => f.one(),
        _ => Fe::ZERO,
    })
}

fn embed_block(g: &Matrix, block: usize, blocks: usize, f: &Field) -> Matrix {
    let m = g.rows();
    Matrix::from_fn(m * blocks, m * blocks, |i, j| {
        let (bi, bj) = (i / m, j / m);
        if bi == block && bj == block {
            g.get(i % m, j % m)
        } else if bi == bj && i == j {
            f.one()
        } else {
            Fe::ZERO
        }
    })
}

/// Permutation of `t` blocks of size `m`: block `i` moves to block `perm[i]`.
fn block_permutation(m: usize, perm: &[usize], f: &Field) -> Matrix {
    let t = perm.len();
    let mut g = Matrix::zeros(m * t, m * t);
    for (i, &pi) in perm.iter().enumerate() {
        for k in 0..m {
            g.set(i * m + k, pi * m + k, f.one());
        }
    }
    g
}

fn block_symmetric_generators(m: usize, t: usize, f: &Field) -> Vec<Matrix> {
    if t < 2 {
        return Vec::new();
    }
    let mut swap: Vec<usize> = (0..t).collect();
    swap.swap(0, 1);
    let mut out = vec![block_permutation(m, &swap, f)];
    if t > 2 {
        let cycle: Vec<usize> = (0..t).map(|i| (i + 1) % t).collect();
        out.push(block_permutation(m, &cycle, f));
    }
    out
}

fn frobenius_generator(n: usize, f: &Field) -> Option<SemilinearMap> {
    (f.degree() > 1).then(|| SemilinearMap::frobenius(n, 1, f))
}

fn make_spec(name: String, space: Arc<VectorSpace>, linear: Vec<Matrix>, with_frobenius: bool) -> GroupSpec {
    let n = space.dim();
    let f = space.field();
    let mut generators: Vec<SemilinearMap> = linear.into_iter().map(SemilinearMap::linear).collect();
    if with_frobenius {
        generators.extend(frobenius_generator(n, f));
    }
    GroupSpec { name, space, generators }
}

fn full_subfield(f: &Field) -> Subfield {
    f.subfield(f.degree()).expect("the field is its own subfield")
}

/// `GL(m, q) wr Sym(t)` extended by the Frobenius map, on `V = U_1 + .. + U_t`.
pub fn generators_c2_linear(m: usize, t: usize, field: Arc<Field>) -> Result<GroupSpec> {
    if m == 0 || t < 2 {
        return Err(Error::InvalidParameters("need m >= 1 and t >= 2".into()));
    }
    let space = Arc::new(VectorSpace::new(field.clone(), m * t)?);
    let f = &*field;
    let mut lin: Vec<Matrix> = gl_generators(m, f, full_subfield(f)).iter().map(|g| embed_block(g, 0, t, f)).collect();
    lin.extend(block_symmetric_generators(m, t, f));
    Ok(make_spec(format!("GL({m},{})wrS{t}", f.order()), space, lin, true))
}

/// Similarities of a sum of `t` isometric nondegenerate `m`-dimensional
/// symplectic spaces that preserve the decomposition, with a common
/// multiplier on every block.
pub fn generators_c2_sp_case1(m: usize, t: usize, field: Arc<Field>) -> Result<GroupSpec> {
    if m == 0 || m % 2 != 0 || t < 2 {
        return Err(Error::InvalidParameters("need m even and t >= 2".into()));
    }
    let space = Arc::new(VectorSpace::new(field.clone(), m * t)?);
    let f = &*field;
    let gram = standard_symplectic_gram(m, f);
    let mut lin: Vec<Matrix> = symplectic_transvections(&gram, f, full_subfield(f)).iter().map(|g| embed_block(g, 0, t, f)).collect();
    lin.extend(block_symmetric_generators(m, t, f));
    let delta = symplectic_delta(m, f.primitive(), f);
    let mut all_delta = delta.clone();
    for _ in 1..t {
        all_delta = all_delta.direct_sum(&delta);
    }
    lin.push(all_delta);
    Ok(make_spec(format!("GSp({m},{})wrS{t}", f.order()), space, lin, true))
}

/// Block-diagonal Gram matrix matching [`generators_c2_sp_case1`].
pub fn c2_sp_case1_gram(m: usize, t: usize, f: &Field) -> Matrix {
    let g = standard_symplectic_gram(m, f);
    let mut out = g.clone();
    for _ in 1..t {
        out = out.direct_sum(&g);
    }
    out
}

/// `{(g, g^-T)}` extended by the swap of the two totally isotropic halves and
/// the Frobenius map, on `V = U_1 + U_2` with `dim U_i = m`.
pub fn generators_c2_sp_case2(m: usize, field: Arc<Field>) -> Result<GroupSpec> {
    if m == 0 {
        return Err(Error::InvalidParameters("need m >= 1".into()));
    }
    let space = Arc::new(VectorSpace::new(field.clone(), 2 * m)?);
    let f = &*field;
    let mut lin = Vec::new();
    for g in gl_generators(m, f, full_subfield(f)) {
        let inv_t = g.inverse(f).expect("generators are invertible").transpose();
        lin.push(g.direct_sum(&inv_t));
    }
    let swap = Matrix::from_fn(2 * m, 2 * m, |i, j| if (i + m) % (2 * m) == j { f.one() } else { Fe::ZERO });
    lin.push(swap);
    Ok(make_spec(format!("GL({m},{}).2", f.order()), space, lin, true))
}

/// `GL(k, q) (x) GL(m, q)` extended by the Frobenius map, on `k x m` matrices
/// stored row-major. With `swap`, `k = m` and the transpose is added.
pub fn generators_tensor(k: usize, m: usize, swap: bool, field: Arc<Field>) -> Result<GroupSpec> {
    if k < 2 || m < 2 {
        return Err(Error::InvalidParameters("tensor factors need dimension at least 2".into()));
    }
    if swap && k != m {
        return Err(Error::InvalidParameters("factor swap needs k = m".into()));
    }
    let space = Arc::new(VectorSpace::new(field.clone(), k * m)?);
    let f = &*field;
    let full = full_subfield(f);
    let mut lin: Vec<Matrix> = gl_generators(k, f, full).iter().map(|g| g.kron(&Matrix::identity(m, f), f)).collect();
    lin.extend(gl_generators(m, f, full).iter().map(|h| Matrix::identity(k, f).kron(h, f)));
    if swap {
        lin.push(Matrix::from_fn(k * m, k * m, |r, c| if c == (r % m) * m + r / m { f.one() } else { Fe::ZERO }));
    }
    Ok(make_spec(format!("GL({k},{q})xGL({m},{q})", q = f.order()), space, lin, true))
}

/// `GSp(k, q) (x) GO(m, q)` extended by the Frobenius map, where the second
/// factor is the brute-forced similarity group of a standard quadratic form.
pub fn generators_tensor_sp(k: usize, m: usize, kind: FormKind, field: Arc<Field>) -> Result<GroupSpec> {
    let f = &*field;
    if k % 2 != 0 || k < 2 || m < 3 || f.characteristic() == 2 || !kind.is_quadratic() {
        return Err(Error::InvalidParameters("need k even, m >= 3, q odd and a quadratic second factor".into()));
    }
    let space = Arc::new(VectorSpace::new(field.clone(), k * m)?);
    let gram = standard_symplectic_gram(k, f);
    let id_m = Matrix::identity(m, f);
    let mut lin: Vec<Matrix> = symplectic_transvections(&gram, f, full_subfield(f)).iter().map(|g| g.kron(&id_m, f)).collect();
    lin.push(symplectic_delta(k, f.primitive(), f).kron(&id_m, f));
    let form = ClassicalForm::standard(kind, m, field.clone())?;
    let id_k = Matrix::identity(k, f);
    lin.extend(brute_force_similarity_group(&form)?.iter().map(|h| id_k.kron(h, f)));
    Ok(make_spec(format!("GSp({k},{q})xGO({m},{q})", q = f.order()), space, lin, true))
}

/// Field of order `q0^r` together with its subfield of order `q0`.
pub fn subfield_pair(q0: u64, r: u32) -> Result<(Arc<Field>, Subfield)> {
    let (p, e0) = crate::field::prime_power(q0).ok_or(Error::InvalidParameters(format!("{q0} is not a prime power")))?;
    if r < 2 {
        return Err(Error::InvalidParameters("need r >= 2".into()));
    }
    let field = Arc::new(Field::new(p as u32, e0 * r)?);
    let sub = field.subfield(e0)?;
    Ok((field, sub))
}

/// `(GL(n, q0) o Z_(q-1))` extended by the Frobenius map of GF(q), `q = q0^r`.
pub fn generators_c5(n: usize, field: Arc<Field>, sub: Subfield) -> Result<GroupSpec> {
    let space = Arc::new(VectorSpace::new(field.clone(), n)?);
    let f = &*field;
    let mut lin = gl_generators(n, f, sub);
    lin.push(Matrix::scalar(n, f.primitive()));
    Ok(make_spec(format!("GL({n},{})oZ{}", sub.order, f.order() - 1), space, lin, true))
}

/// `(GSp(n, q0) o Z_(q-1))` extended by the Frobenius map of GF(q).
pub fn generators_c5_sp(n: usize, field: Arc<Field>, sub: Subfield) -> Result<GroupSpec> {
    if n % 2 != 0 {
        return Err(Error::InvalidParameters("symplectic subfield groups need even n".into()));
    }
    let space = Arc::new(VectorSpace::new(field.clone(), n)?);
    let f = &*field;
    let gram = standard_symplectic_gram(n, f);
    let mut lin = symplectic_transvections(&gram, f, sub);
    lin.push(symplectic_delta(n, f.subfield_primitive(sub), f));
    lin.push(Matrix::scalar(n, f.primitive()));
    Ok(make_spec(format!("GSp({n},{})oZ{}", sub.order, f.order() - 1), space, lin, true))
}

/// The quaternion group `<a, c>` on GF(q)^2 together with the scalars.
/// `c = [[b, g], [g, -b]]` for the first pair `(b, g)` in enumeration order
/// with `b^2 + g^2 = -1`.
pub fn generators_c6_t1_type4(field: Arc<Field>) -> Result<GroupSpec> {
    let f = &*field;
    if f.characteristic() == 2 || f.degree() != 1 {
        return Err(Error::InvalidParameters("need q an odd prime".into()));
    }
    let space = Arc::new(VectorSpace::new(field.clone(), 2)?);
    let one = f.one();
    let minus = f.neg(one);
    let (b, g) = f
        .elements()
        .flat_map(|b| f.elements().map(move |g| (b, g)))
        .find(|&(b, g)| f.add(f.mul(b, b), f.mul(g, g)) == minus)
        .expect("-1 is a sum of two squares in every finite field");
    let a = Matrix::from_rows(&[vec![Fe::ZERO, one], vec![minus, Fe::ZERO]])?;
    let c = Matrix::from_rows(&[vec![b, g], vec![g, f.neg(b)]])?;
    let z = Matrix::scalar(2, f.primitive());
    Ok(make_spec(format!("Z{}oQ8", f.order() - 1), space, vec![a, c, z], false))
}

fn brute_force(form: &ClassicalForm, multipliers: &[Fe]) -> Result<Vec<Matrix>> {
    let f = form.field();
    let n = form.dim();
    let q = f.order() as u64;
    let size = q.checked_pow((n * n) as u32).unwrap_or(u64::MAX);
    if size > BRUTE_FORCE_CAP {
        return Err(Error::CapExceeded { what: "brute-force form group", size, cap: BRUTE_FORCE_CAP });
    }
    let space = VectorSpace::new(form.field_arc(), n)?;
    let vectors: Vec<Vec<Fe>> = space.nonzero().map(|i| space.vector(i)).collect();
    let values: Vec<Fe> = vectors.iter().map(|v| form.phi_bar_unchecked(v)).collect();
    let basis: Vec<Vec<Fe>> = (0..n).map(|i| (0..n).map(|j| if i == j { f.one() } else { Fe::ZERO }).collect()).collect();
    let base_value: Vec<Fe> = basis.iter().map(|e| form.phi_bar_unchecked(e)).collect();
    let quadratic = form.kind().is_quadratic();
    let pair = |u: &[Fe], v: &[Fe]| form.bilinear_unchecked(u, v);
    let mut out = Vec::new();
    for &lambda in multipliers {
        let candidates: Vec<Vec<usize>> = (0..n)
            .map(|i| {
                let target = f.mul(lambda, base_value[i]);
                (0..vectors.len()).filter(|&k| values[k] == target).collect()
            })
            .collect();
        let targets: Vec<Vec<Fe>> = (0..n).map(|i| (0..n).map(|j| f.mul(lambda, pair(&basis[i], &basis[j]))).collect()).collect();
        let mut chosen: Vec<usize> = Vec::with_capacity(n);
        search(&vectors, &candidates, &targets, quadratic, &pair, &mut chosen, &mut out, f)?;
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn search(
    vectors: &[Vec<Fe>],
    candidates: &[Vec<usize>],
    targets: &[Vec<Fe>],
    quadratic: bool,
    pair: &dyn Fn(&[Fe], &[Fe]) -> Fe,
    chosen: &mut Vec<usize>,
    out: &mut Vec<Matrix>,
    f: &Field,
) -> Result<()> {
    let i = chosen.len();
    if i == candidates.len() {
        let rows: Vec<Vec<Fe>> = chosen.iter().map(|&k| vectors[k].clone()).collect();
        let m = Matrix::from_rows(&rows)?;
        if m.is_invertible(f) {
            out.push(m);
        }
        return Ok(());
    }
    for &k in &candidates[i] {
        let v = &vectors[k];
        let ok = chosen.iter().enumerate().all(|(j, &kj)| {
            let u = &vectors[kj];
            pair(u, v) == targets[j][i] && (quadratic || pair(v, u) == targets[i][j])
        });
        if ok {
            chosen.push(k);
            search(vectors, candidates, targets, quadratic, pair, chosen, out, f)?;
            chosen.pop();
        }
    }
    Ok(())
}

/// Every isometry of `form`, as matrices.
pub fn brute_force_isometry_group(form: &ClassicalForm) -> Result<Vec<Matrix>> {
    brute_force(form, &[form.field().one()])
}

/// Every similarity of `form`, as matrices.
pub fn brute_force_similarity_group(form: &ClassicalForm) -> Result<Vec<Matrix>> {
    let lambdas: Vec<Fe> = form.field().nonzero().collect();
    brute_force(form, &lambdas)
}

/// Similarities of `form` extended by the Frobenius map.
pub fn generators_c8(form: &ClassicalForm) -> Result<GroupSpec> {
    let space = Arc::new(VectorSpace::new(form.field_arc(), form.dim())?);
    let sims = brute_force_similarity_group(form)?;
    Ok(make_spec(format!("GammaI({:?},{},{})", form.kind(), form.dim(), form.field().order()), space, sims, true))
}

/// Isometries of `form` as a generating set.
pub fn isometry_group_spec(form: &ClassicalForm) -> Result<GroupSpec> {
    let space = Arc::new(VectorSpace::new(form.field_arc(), form.dim())?);
    let isos = brute_force_isometry_group(form)?;
    Ok(make_spec(format!("I({:?},{},{})", form.kind(), form.dim(), form.field().order()), space, isos, false))
}

/// Enumerates the `a`-dimensional GF(q0)-subspaces of GF(q) as row spaces of
/// reduced echelon `a x r` matrices over GF(q0) in a greedy relative basis,
/// and returns `(number of subspaces, number of classes under nonzero
/// scalars)`.
pub fn lambda_classes_by_enumeration(cls: &SubfieldClassifier, a: usize) -> Result<(usize, usize)> {
    let f = cls.field();
    let r = cls.r() as usize;
    if a == 0 || a > r {
        return Err(Error::InvalidParameters(format!("need 1 <= a <= r, got a = {a}")));
    }
    let basis = cls.relative_basis();
    let sub_elems: Vec<Fe> = f.elements().filter(|&x| f.in_subfield(x, cls.subfield())).collect();
    let mut keys: HashMap<Vec<Fe>, usize> = HashMap::new();
    for pivots in combinations(r, a) {
        let free: Vec<(usize, usize)> = (0..a)
            .flat_map(|i| (pivots[i] + 1..r).filter(|j| !pivots.contains(j)).map(move |j| (i, j)))
            .collect();
        let total = (sub_elems.len() as u64).pow(free.len() as u32);
        for mut code in 0..total {
            let mut rows = vec![vec![Fe::ZERO; r]; a];
            for (i, &pc) in pivots.iter().enumerate() {
                rows[i][pc] = f.one();
            }
            for &(i, j) in &free {
                rows[i][j] = sub_elems[(code % sub_elems.len() as u64) as usize];
                code /= sub_elems.len() as u64;
            }
            let elems: Vec<Fe> = rows
                .iter()
                .map(|row| row.iter().zip(&basis).fold(Fe::ZERO, |acc, (&c, &b)| f.add(acc, f.mul(c, b))))
                .collect();
            let next = keys.len();
            keys.entry(cls.span_key(&elems)).or_insert(next);
        }
    }
    let xi = f.primitive();
    let mut seen = vec![false; keys.len()];
    let mut classes = 0;
    for (key, &id) in &keys {
        if seen[id] {
            continue;
        }
        classes += 1;
        let mut cur = key.clone();
        loop {
            let idx = keys[&cur];
            if seen[idx] {
                break;
            }
            seen[idx] = true;
            cur = prime_span_key(f, cur.iter().map(|&x| f.mul(xi, x)));
        }
    }
    Ok((keys.len(), classes))
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}
