//! The Lie algebra g_r generated by the entries of L^±, its cobracket, the
//! double D(b⁺) = g ⊕ h, and the comparison map Φ_r.

use super::lie::{map_tensor, Cobracket, LieAlgebra, Tensor2};
use super::rep::RepData;
use super::rootdata::{self, RootData};
use crate::hseries::{qi, qr, Q};
use crate::linalg::{self, QMat, Subspace};
use crate::ncalg::Sign;
use num::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassicalError {
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

/// True when `mu` lies in the punctured cone `Q̇₊` (`positive`) or `Q̇₋`.
pub fn in_punctured_cone(mu: &[Q], positive: bool) -> bool {
    let integral = mu.iter().all(|c| c.is_integer());
    let nonzero = mu.iter().any(|c| !c.is_zero());
    let signed = mu.iter().all(|c| if positive { !c.is_negative() } else { !c.is_positive() });
    integral && nonzero && signed
}

/// True when the generator `t^σ_ij` is killed by triangularity.
pub fn is_killed(rep: &RepData, sign: Sign, i: usize, j: usize) -> bool {
    let mu = rep.entry_weight(i, j);
    match sign {
        Sign::Plus => in_punctured_cone(&mu, false),
        Sign::Minus => in_punctured_cone(&mu, true),
    }
}

/// Symbol index of `l^σ_ij` (0-based `i`, `j`) in the free span F.
pub fn sym(d: usize, sign: Sign, i: usize, j: usize) -> usize {
    let s = match sign {
        Sign::Plus => 0,
        Sign::Minus => 1,
    };
    s * d * d + i * d + j
}

pub fn sym_parts(d: usize, x: usize) -> (Sign, usize, usize) {
    let sign = if x < d * d { Sign::Plus } else { Sign::Minus };
    let r = x % (d * d);
    (sign, r / d, r % d)
}

pub fn sym_name(d: usize, x: usize) -> String {
    let (s, i, j) = sym_parts(d, x);
    format!("l{}[{},{}]", s.symbol(), i + 1, j + 1)
}

/// The bracket `[l^σ_ij, l^σ'_kl]` read off as minus the `((i,k),(j,l))`
/// entry of `[r_π, L_1^σ + L_2^σ']`, as a vector in F.
pub fn bracket_from_r(r: &QMat, d: usize, s1: Sign, s2: Sign, i: usize, j: usize, k: usize, l: usize) -> Vec<Q> {
    let f = 2 * d * d;
    let mut v = vec![Q::zero(); f];
    let row = i * d + k;
    let col = j * d + l;
    for a in 0..d {
        // (r L_1)_{(ik),(jl)} = Σ_a r_{(ik),(al)} l^σ_aj
        let x = &r[row][a * d + l];
        if !x.is_zero() {
            v[sym(d, s1, a, j)] -= x;
        }
        // (r L_2)_{(ik),(jl)} = Σ_b r_{(ik),(jb)} l^σ'_bl
        let x = &r[row][j * d + a];
        if !x.is_zero() {
            v[sym(d, s2, a, l)] -= x;
        }
        // (L_1 r)_{(ik),(jl)} = Σ_a l^σ_ia r_{(ak),(jl)}
        let x = &r[a * d + k][col];
        if !x.is_zero() {
            v[sym(d, s1, i, a)] += x;
        }
        // (L_2 r)_{(ik),(jl)} = Σ_b l^σ'_kb r_{(ib),(jl)}
        let x = &r[i * d + a][col];
        if !x.is_zero() {
            v[sym(d, s2, k, a)] += x;
        }
    }
    v
}

/// The presented Lie algebra g_r = F / K with F spanned by all `l^±_ij`.
#[derive(Clone, Debug)]
pub struct Gr {
    pub rep: RepData,
    pub d: usize,
    /// Bracket table on F: `table[x][y] = B(x, y)`.
    pub table: Vec<Vec<Vec<Q>>>,
    /// Symbols killed by triangularity.
    pub killed: Vec<usize>,
    /// Surviving symbols, the generator list of the presentation.
    pub generators: Vec<usize>,
    pub kernel: Subspace,
    /// Symbols whose classes form a basis of g_r.
    pub basis: Vec<usize>,
    pub lie: LieAlgebra,
    pub cobracket: Cobracket,
}

impl Gr {
    pub fn build(rep: &RepData) -> Result<Self, ClassicalError> {
        Self::build_with_signs(rep, &[Sign::Plus, Sign::Minus])
    }

    /// Builds the algebra generated by the `l^σ` with σ in `signs`; a single
    /// sign gives the Borel version b^±_r.
    pub fn build_with_signs(rep: &RepData, signs: &[Sign]) -> Result<Self, ClassicalError> {
        let d = rep.dim;
        let f = 2 * d * d;
        let r = rep.classical_r();
        let mut table = vec![vec![vec![Q::zero(); f]; f]; f];
        for x in 0..f {
            let (s1, i, j) = sym_parts(d, x);
            for y in 0..f {
                let (s2, k, l) = sym_parts(d, y);
                table[x][y] = match (s1, s2) {
                    (Sign::Minus, Sign::Plus) => {
                        bracket_from_r(&r, d, s2, s1, k, l, i, j).into_iter().map(|c| -c).collect()
                    }
                    _ => bracket_from_r(&r, d, s1, s2, i, j, k, l),
                };
            }
        }
        let mut kernel = Subspace::new(f);
        // Ideal seeds; units of an excluded sign only mark coordinates to drop.
        let mut seeds: Vec<Vec<Q>> = Vec::new();
        let mut killed = Vec::new();
        let unit = |x: usize| {
            let mut v = vec![Q::zero(); f];
            v[x] = Q::one();
            v
        };
        for x in 0..f {
            let (s, i, j) = sym_parts(d, x);
            if !signs.contains(&s) || is_killed(rep, s, i, j) {
                if signs.contains(&s) {
                    killed.push(x);
                    seeds.push(unit(x));
                }
                kernel.insert(&unit(x));
            }
        }
        let generators: Vec<usize> =
            (0..f).filter(|&x| signs.contains(&sym_parts(d, x).0) && !killed.contains(&x)).collect();
        let bracket = |u: &[Q], v: &[Q]| -> Vec<Q> {
            let mut out = vec![Q::zero(); f];
            for (a, ua) in u.iter().enumerate() {
                if ua.is_zero() {
                    continue;
                }
                for (b, vb) in v.iter().enumerate() {
                    if vb.is_zero() {
                        continue;
                    }
                    let c = ua * vb;
                    for (o, t) in out.iter_mut().zip(&table[a][b]) {
                        if !t.is_zero() {
                            *o += &c * t;
                        }
                    }
                }
            }
            out
        };
        // Antisymmetry and Jacobi residuals among the generators.
        let gens = generators.clone();
        for (p, &x) in gens.iter().enumerate() {
            for &y in &gens[p..] {
                let s: Vec<Q> = table[x][y].iter().zip(&table[y][x]).map(|(a, b)| a + b).collect();
                kernel.insert(&s);
                seeds.push(s);
            }
        }
        for (p, &x) in gens.iter().enumerate() {
            for (q, &y) in gens.iter().enumerate().skip(p + 1) {
                for &z in &gens[q + 1..] {
                    let (ux, uy, uz) = (unit(x), unit(y), unit(z));
                    let a = bracket(&ux, &table[y][z]);
                    let b = bracket(&uy, &table[z][x]);
                    let c = bracket(&uz, &table[x][y]);
                    let s: Vec<Q> = a.iter().zip(&b).zip(&c).map(|((u, v), w)| u + v + w).collect();
                    kernel.insert(&s);
                    seeds.push(s);
                }
            }
        }
        // Ideal closure.
        let mut queue = seeds;
        while let Some(k) = queue.pop() {
            for x in (0..f).filter(|&x| signs.contains(&sym_parts(d, x).0)) {
                let ux = unit(x);
                for v in [bracket(&k, &ux), bracket(&ux, &k)] {
                    if kernel.insert(&v) {
                        queue.push(v);
                    }
                }
            }
        }
        let pivots = kernel.pivots();
        let basis: Vec<usize> = (0..f).filter(|x| !pivots.contains(x)).collect();
        let proj = |v: &[Q]| -> Vec<Q> {
            let red = kernel.reduce(v);
            basis.iter().map(|&x| red[x].clone()).collect()
        };
        let m = basis.len();
        let mut sc = vec![vec![Vec::new(); m]; m];
        for a in 0..m {
            for b in 0..m {
                sc[a][b] = proj(&table[basis[a]][basis[b]]);
            }
        }
        let lie = LieAlgebra::new(basis.iter().map(|&x| sym_name(d, x)).collect(), sc);
        if let Some((a, b)) = lie.antisymmetry_violation() {
            return Err(ClassicalError::Consistency(format!("antisymmetry fails on ({a},{b})")));
        }
        if let Some((a, b, c)) = lie.jacobi_violation() {
            return Err(ClassicalError::Consistency(format!("Jacobi fails on ({a},{b},{c})")));
        }
        let mut gr =
            Gr { rep: rep.clone(), d, table, killed, generators, kernel, basis, lie, cobracket: Cobracket::zero(m) };
        gr.cobracket = Cobracket { table: (0..m).map(|a| gr.project2(&gr.delta_free(gr.basis[a]))).collect() };
        Ok(gr)
    }

    pub fn f_dim(&self) -> usize {
        2 * self.d * self.d
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn unit_f(&self, x: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.f_dim()];
        v[x] = Q::one();
        v
    }

    /// Coordinates in g_r of a vector of F.
    pub fn project(&self, v: &[Q]) -> Vec<Q> {
        let red = self.kernel.reduce(v);
        self.basis.iter().map(|&x| red[x].clone()).collect()
    }

    /// Lifts g_r coordinates back to F using the basis representatives.
    pub fn lift(&self, c: &[Q]) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.f_dim()];
        for (k, &x) in self.basis.iter().enumerate() {
            v[x] = c[k].clone();
        }
        v
    }

    /// `P ⊗ P` on an F ⊗ F tensor.
    pub fn project2(&self, t: &Tensor2) -> Tensor2 {
        let p = self.projection_matrix();
        map_tensor(&p, &p, t)
    }

    /// Matrix of the projection F → g_r (column `x` is the image of `l_x`).
    pub fn projection_matrix(&self) -> QMat {
        let cols: Vec<Vec<Q>> = (0..self.f_dim()).map(|x| self.project(&self.unit_f(x))).collect();
        linalg::transpose(&cols)
    }

    /// `δ(l_ab) = Σ_c (l_ac ⊗ l_cb - l_cb ⊗ l_ac)` as an F ⊗ F tensor.
    pub fn delta_free(&self, x: usize) -> Tensor2 {
        let d = self.d;
        let f = self.f_dim();
        let (s, a, b) = sym_parts(d, x);
        let mut t = linalg::zeros(f, f);
        for c in 0..d {
            let (u, v) = (sym(d, s, a, c), sym(d, s, c, b));
            t[u][v] += Q::one();
            t[v][u] -= Q::one();
        }
        t
    }

    /// Applies the free cobracket to a vector of F.
    pub fn delta_free_vec(&self, v: &[Q]) -> Tensor2 {
        let f = self.f_dim();
        let mut t = linalg::zeros(f, f);
        for (x, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let dx = self.delta_free(x);
            for i in 0..f {
                for j in 0..f {
                    if !dx[i][j].is_zero() {
                        t[i][j] += c * &dx[i][j];
                    }
                }
            }
        }
        t
    }

    /// Checks that δ vanishes on the kernel, so it descends to g_r.
    pub fn cobracket_well_defined(&self) -> bool {
        self.kernel.basis().iter().all(|k| {
            let t = self.project2(&self.delta_free_vec(k));
            t.iter().all(|r| linalg::is_zero_vec(r))
        })
    }

    /// The Casimir matrix on gl(V): column `(i,j)` holds `c(E_ij)`.
    fn casimir_on_gl(&self) -> QMat {
        let d = self.d;
        let mut m = linalg::zeros(d * d, d * d);
        for i in 0..d {
            for j in 0..d {
                let mut e = linalg::zeros(d, d);
                e[i][j] = Q::one();
                let c = self.rep.casimir_action(&e);
                for k in 0..d {
                    for l in 0..d {
                        m[k * d + l][i * d + j] = c[k][l].clone();
                    }
                }
            }
        }
        m
    }

    /// Coefficients of `K^σ = L^σ - κ⁻¹ c(L^σ)` as vectors of F.
    pub fn k_coefficients(&self, sign: Sign) -> Vec<Vec<Q>> {
        let d = self.d;
        let kinv = self.rep.kappa().recip();
        let c = self.casimir_on_gl();
        let mut out = Vec::new();
        for k in 0..d {
            for l in 0..d {
                let mut v = vec![Q::zero(); self.f_dim()];
                v[sym(d, sign, k, l)] += Q::one();
                for i in 0..d {
                    for j in 0..d {
                        let x = &c[k * d + l][i * d + j];
                        if !x.is_zero() {
                            v[sym(d, sign, i, j)] -= &kinv * x;
                        }
                    }
                }
                out.push(v);
            }
        }
        out
    }

    /// First K-coefficient that fails to be central in g_r.
    pub fn k_central_violation(&self) -> Option<(Sign, usize)> {
        for s in Sign::both() {
            for (n, k) in self.k_coefficients(s).iter().enumerate() {
                for x in 0..self.f_dim() {
                    let b = self.bracket_f(k, &self.unit_f(x));
                    if !linalg::is_zero_vec(&self.project(&b)) {
                        return Some((s, n));
                    }
                }
            }
        }
        None
    }

    /// Bracket of two vectors of F via the table.
    pub fn bracket_f(&self, u: &[Q], v: &[Q]) -> Vec<Q> {
        let f = self.f_dim();
        let mut out = vec![Q::zero(); f];
        for (a, ua) in u.iter().enumerate() {
            if ua.is_zero() {
                continue;
            }
            for (b, vb) in v.iter().enumerate() {
                if vb.is_zero() {
                    continue;
                }
                let c = ua * vb;
                for (o, t) in out.iter_mut().zip(&self.table[a][b]) {
                    if !t.is_zero() {
                        *o += &c * t;
                    }
                }
            }
        }
        out
    }

    /// Generators of the ideal whose quotient recovers g: K^± coefficients
    /// and the weight-zero entries of L⁺ + L⁻.
    pub fn g_ideal(&self) -> Vec<Vec<Q>> {
        let d = self.d;
        let mut gens: Vec<Vec<Q>> = Sign::both().iter().flat_map(|&s| self.k_coefficients(s)).collect();
        for i in 0..d {
            for j in 0..d {
                if self.rep.entry_weight(i, j).iter().all(Zero::is_zero) {
                    let mut v = vec![Q::zero(); self.f_dim()];
                    v[sym(d, Sign::Plus, i, j)] += Q::one();
                    v[sym(d, Sign::Minus, i, j)] += Q::one();
                    gens.push(v);
                }
            }
        }
        gens
    }

    /// The quotient of g_r by [`Gr::g_ideal`].
    pub fn recover_g(&self) -> Result<RecoveredG, ClassicalError> {
        let f = self.f_dim();
        let mut ideal = self.kernel.clone();
        let mut queue = Vec::new();
        for v in self.g_ideal() {
            if ideal.insert(&v) {
                queue.push(v);
            }
        }
        while let Some(k) = queue.pop() {
            for x in 0..f {
                let ux = self.unit_f(x);
                for v in [self.bracket_f(&k, &ux), self.bracket_f(&ux, &k)] {
                    if ideal.insert(&v) {
                        queue.push(v);
                    }
                }
            }
        }
        let pivots = ideal.pivots();
        let basis: Vec<usize> = (0..f).filter(|x| !pivots.contains(x)).collect();
        let proj = |v: &[Q]| -> Vec<Q> {
            let red = ideal.reduce(v);
            basis.iter().map(|&x| red[x].clone()).collect()
        };
        let m = basis.len();
        let mut sc = vec![vec![Vec::new(); m]; m];
        for a in 0..m {
            for b in 0..m {
                sc[a][b] = proj(&self.table[basis[a]][basis[b]]);
            }
        }
        let lie = LieAlgebra::new(basis.iter().map(|&x| sym_name(self.d, x)).collect(), sc);
        if !lie.is_lie() {
            return Err(ClassicalError::Consistency("quotient is not a Lie algebra".into()));
        }
        let killing_rank = linalg::rank(&lie.killing_form());
        // Chevalley triple per simple root from weight ±α_i generators.
        let rd = &self.rep.root;
        let d = self.d;
        let mut es = Vec::new();
        let mut fs = Vec::new();
        for i in 0..rd.rank {
            let alpha: Vec<Q> = (0..rd.rank).map(|k| qi(i64::from(k == i))).collect();
            let neg: Vec<Q> = alpha.iter().map(|c| -c).collect();
            let find = |sign: Sign, mu: &[Q]| -> Option<Vec<Q>> {
                (0..d)
                    .flat_map(|a| (0..d).map(move |b| (a, b)))
                    .filter(|&(a, b)| self.rep.entry_weight(a, b) == mu)
                    .map(|(a, b)| proj(&self.unit_f(sym(d, sign, a, b))))
                    .find(|v| !linalg::is_zero_vec(v))
            };
            let (Some(e), Some(fv)) = (find(Sign::Plus, &alpha), find(Sign::Minus, &neg)) else {
                return Err(ClassicalError::Consistency(format!("no root vectors for simple root {i}")));
            };
            es.push(e);
            fs.push(fv);
        }
        let mut hs = Vec::new();
        for i in 0..rd.rank {
            let h = lie.bracket(&es[i], &fs[i]);
            let he = lie.bracket(&h, &es[i]);
            let p = es[i].iter().position(|c| !c.is_zero()).expect("nonzero e");
            let lambda = &he[p] / &es[i][p];
            if lambda.is_zero() {
                return Err(ClassicalError::Consistency("degenerate sl2 triple".into()));
            }
            hs.push(h.iter().map(|c| c * &qi(2) / &lambda).collect::<Vec<Q>>());
        }
        let mut cartan = linalg::zeros(rd.rank, rd.rank);
        for i in 0..rd.rank {
            for j in 0..rd.rank {
                let he = lie.bracket(&hs[i], &es[j]);
                let p = es[j].iter().position(|c| !c.is_zero()).expect("nonzero e");
                let a = &he[p] / &es[j][p];
                if he != es[j].iter().map(|c| c * &a).collect::<Vec<Q>>() {
                    return Err(ClassicalError::Consistency("e_j is not an ad h_i eigenvector".into()));
                }
                cartan[i][j] = a;
            }
        }
        Ok(RecoveredG { lie, killing_rank, cartan })
    }

    /// Structure constants of gl(V)^g in the basis `b`.
    pub fn invariant_structure(b: &[QMat]) -> Vec<Vec<Vec<Q>>> {
        let m = b.len();
        if m == 0 {
            return Vec::new();
        }
        let flat: Vec<Vec<Q>> = b.iter().map(|x| x.iter().flatten().cloned().collect()).collect();
        let cols = linalg::transpose(&flat);
        let mut sc = vec![vec![Vec::new(); m]; m];
        for x in 0..m {
            for y in 0..m {
                let c = rootdata::commutator(&b[x], &b[y]);
                let v: Vec<Q> = c.iter().flatten().cloned().collect();
                sc[x][y] = linalg::solve(&cols, &v).expect("gl(V)^g is a subalgebra");
            }
        }
        sc
    }

    /// Scans δ_r on the K-coefficients for a nonzero value; returns the
    /// sign, the coefficient index, and the value in g_r ⊗ g_r.
    pub fn cocommutativity_witness(&self) -> Option<(Sign, usize, Tensor2)> {
        for s in Sign::both() {
            for (n, k) in self.k_coefficients(s).iter().enumerate() {
                let t = self.project2(&self.delta_free_vec(k));
                if !t.iter().all(|r| linalg::is_zero_vec(r)) {
                    return Some((s, n, t));
                }
            }
        }
        None
    }
}

#[derive(Clone, Debug)]
pub struct RecoveredG {
    pub lie: LieAlgebra,
    pub killing_rank: usize,
    pub cartan: QMat,
}

/// D(b⁺) = g ⊕ ζ(h) with its form, r-matrix and involution.
#[derive(Clone, Debug)]
pub struct Double {
    pub root: RootData,
    pub lie: LieAlgebra,
    pub form: QMat,
    pub r: Tensor2,
    pub omega: QMat,
}

impl Double {
    pub fn build(root: &RootData) -> Self {
        let g = root.dim();
        let rk = root.rank;
        let zeta = LieAlgebra::abelian((0..rk).map(|i| format!("z(h{})", i + 1)).collect());
        let lie = root.lie.direct_sum(&zeta);
        let dd = g + rk;
        let mut form = linalg::zeros(dd, dd);
        for a in 0..g {
            for b in 0..g {
                form[a][b] = root.form[a][b].clone();
            }
        }
        for i in 0..rk {
            for j in 0..rk {
                form[g + i][g + j] = -root.form[root.h(i)][root.h(j)].clone();
            }
        }
        let embed = |v: &[Q]| {
            let mut w = v.to_vec();
            w.resize(dd, Q::zero());
            w
        };
        // h^± = h ± ζ(h)
        let hpm = |h: &[Q], s: i64| {
            let mut w = embed(h);
            for i in 0..rk {
                w[g + i] = &h[root.h(i)] * &qi(s);
            }
            w
        };
        let mut r = linalg::zeros(dd, dd);
        for k in 0..root.num_pos() {
            r[root.xp(k)][root.xm(k)] += Q::one();
        }
        let half = qr(1, 2);
        for i in 0..rk {
            let w = hpm(&root.coweights[i], 1);
            let hi: Vec<Q> = (0..g).map(|a| qi(i64::from(a == root.h(i)))).collect();
            let hm = hpm(&hi, -1);
            for (a, x) in w.iter().enumerate() {
                for (b, y) in hm.iter().enumerate() {
                    if !x.is_zero() && !y.is_zero() {
                        r[a][b] += &half * x * y;
                    }
                }
            }
        }
        let mut omega = linalg::zeros(dd, dd);
        for a in 0..g {
            for b in 0..g {
                omega[a][b] = root.omega[a][b].clone();
            }
        }
        for i in 0..rk {
            omega[g + i][g + i] = Q::one();
        }
        Double { root: root.clone(), lie, form, r, omega }
    }

    pub fn dim(&self) -> usize {
        self.lie.dim()
    }

    /// `⟨h^+, k^-⟩` and friends for Cartan elements `h`, `k` given in g coordinates.
    pub fn pair(&self, u: &[Q], v: &[Q]) -> Q {
        let m = linalg::matvec(&self.form, v);
        u.iter().zip(&m).map(|(a, b)| a * b).sum()
    }

    /// `h ± ζ(h)` in double coordinates.
    pub fn cartan_pm(&self, h: &[Q], plus: bool) -> Vec<Q> {
        let g = self.root.dim();
        let mut w = h.to_vec();
        w.resize(self.dim(), Q::zero());
        for i in 0..self.root.rank {
            let c = &h[self.root.h(i)];
            w[g + i] = if plus { c.clone() } else { -c.clone() };
        }
        w
    }

    pub fn cobracket(&self) -> Cobracket {
        self.lie.coboundary(&self.r)
    }

    /// `π` extended to the double by letting ζ(h) act by zero.
    pub fn pi(&self, rep: &RepData, a: usize) -> QMat {
        if a < self.root.dim() {
            rep.pi[a].clone()
        } else {
            linalg::zeros(rep.dim, rep.dim)
        }
    }
}

/// Target algebra D(b⁺) ⊕ z⁺ ⊕ z⁻ with Φ_r: F → target.
#[derive(Clone, Debug)]
pub struct PhiMap {
    pub double: Double,
    pub invariants: Vec<QMat>,
    pub target: LieAlgebra,
    pub target_cobracket: Cobracket,
    /// Column `x` holds `Φ_r(l_x)`.
    pub matrix: QMat,
}

impl PhiMap {
    pub fn build(gr: &Gr) -> Self {
        let rep = &gr.rep;
        let double = Double::build(&rep.root);
        let inv = rep.invariants();
        let m = inv.len();
        let dd = double.dim();
        let zsc = Gr::invariant_structure(&inv);
        let z = LieAlgebra::abelian(
            (0..2 * m).map(|c| if c < m { format!("z+{c}") } else { format!("z-{}", c - m) }).collect(),
        );
        let target = double.lie.direct_sum(&z);
        let t = dd + 2 * m;
        // δ(z_c) = Σ c^c_ab z_a ⊗ z_b on z⁺ and the negative on z⁻.
        let mut cob = double.cobracket().table;
        for row in cob.iter_mut() {
            for r in row.iter_mut() {
                r.resize(t, Q::zero());
            }
            row.resize(t, vec![Q::zero(); t]);
        }
        for s in 0..2 {
            for c in 0..m {
                let mut tc = linalg::zeros(t, t);
                for a in 0..m {
                    for b in 0..m {
                        let v = &zsc[a][b][c];
                        if !v.is_zero() {
                            tc[dd + s * m + a][dd + s * m + b] = if s == 0 { v.clone() } else { -v.clone() };
                        }
                    }
                }
                cob.push(tc);
            }
        }
        let target_cobracket = Cobracket { table: cob };

        let d = gr.d;
        let f = gr.f_dim();
        let mut cols = vec![vec![Q::zero(); t]; f];
        let rd = &double.r;
        // L⁺ = (π ⊗ ω) r^D, L⁻ = -(π ⊗ ω) r^D_21.
        for a in 0..dd {
            for b in 0..dd {
                let c = &rd[a][b];
                if c.is_zero() {
                    continue;
                }
                let wb: Vec<Q> = (0..dd).map(|k| double.omega[k][b].clone()).collect();
                let wa: Vec<Q> = (0..dd).map(|k| double.omega[k][a].clone()).collect();
                let pa = double.pi(rep, a);
                let pb = double.pi(rep, b);
                for i in 0..d {
                    for j in 0..d {
                        if !pa[i][j].is_zero() {
                            let col = &mut cols[sym(d, Sign::Plus, i, j)];
                            for (k, w) in wb.iter().enumerate() {
                                if !w.is_zero() {
                                    col[k] += c * &pa[i][j] * w;
                                }
                            }
                        }
                        if !pb[i][j].is_zero() {
                            let col = &mut cols[sym(d, Sign::Minus, i, j)];
                            for (k, w) in wa.iter().enumerate() {
                                if !w.is_zero() {
                                    col[k] -= c * &pb[i][j] * w;
                                }
                            }
                        }
                    }
                }
            }
        }
        // ±Z^± with Z = Σ_c B_c ⊗ z_c.
        for (c, b) in inv.iter().enumerate() {
            for i in 0..d {
                for j in 0..d {
                    if !b[i][j].is_zero() {
                        cols[sym(d, Sign::Plus, i, j)][dd + c] += &b[i][j];
                        cols[sym(d, Sign::Minus, i, j)][dd + m + c] -= &b[i][j];
                    }
                }
            }
        }
        PhiMap { double, invariants: inv, target, target_cobracket, matrix: linalg::transpose(&cols) }
    }

    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        linalg::matvec(&self.matrix, v)
    }

    /// Verifies Φ on brackets of F, Φ(K) = 0 and injectivity on g_r.
    pub fn verify(&self, gr: &Gr) -> Result<(), String> {
        let f = gr.f_dim();
        for x in 0..f {
            for y in 0..f {
                let lhs = self.apply(&gr.table[x][y]);
                let rhs = self.target.bracket(&self.apply(&gr.unit_f(x)), &self.apply(&gr.unit_f(y)));
                if lhs != rhs {
                    return Err(format!("bracket of {} and {} not preserved", sym_name(gr.d, x), sym_name(gr.d, y)));
                }
            }
        }
        for k in gr.kernel.basis() {
            if !linalg::is_zero_vec(&self.apply(&k)) {
                return Err("kernel vector with nonzero image".into());
            }
        }
        let cols: Vec<Vec<Q>> = gr.basis.iter().map(|&x| self.apply(&gr.unit_f(x))).collect();
        let rank = linalg::rank(&cols);
        if rank != gr.dim() {
            return Err(format!("rank {rank} differs from dim g_r = {}", gr.dim()));
        }
        Ok(())
    }

    /// Verifies `(Φ ⊗ Φ) δ_r = δ Φ` on every surviving generator.
    pub fn verify_cobracket(&self, gr: &Gr) -> Result<(), String> {
        for &x in &gr.generators {
            let lhs = map_tensor(&self.matrix, &self.matrix, &gr.delta_free(x));
            let rhs = self.target_cobracket.apply(&self.apply(&gr.unit_f(x)));
            if lhs != rhs {
                return Err(format!("cobracket mismatch on {}", sym_name(gr.d, x)));
            }
        }
        Ok(())
    }

    /// The z-sector part of the target cobracket on `Φ(v)`.
    pub fn z_cobracket(&self, v: &[Q]) -> Tensor2 {
        let dd = self.double.dim();
        let mut img = self.apply(v);
        for c in img.iter_mut().take(dd) {
            *c = Q::zero();
        }
        self.target_cobracket.apply(&img)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vector(n: usize) -> RepData {
        RepData::vector(&RootData::sl(n))
    }

    #[test]
    fn sl2_bracket_example() {
        let gr = Gr::build(&vector(2)).unwrap();
        let d = 2;
        let b = &gr.table[sym(d, Sign::Plus, 0, 0)][sym(d, Sign::Plus, 0, 1)];
        let mut expect = vec![Q::zero(); 8];
        expect[sym(d, Sign::Plus, 0, 1)] = qr(-1, 2);
        assert_eq!(b, &expect);
    }

    #[test]
    fn dims_match_double_plus_invariants() {
        for (rep, expect) in [(vector(2), 6), (vector(3), 12), (vector(2).direct_sum(&vector(2)), 12)] {
            let gr = Gr::build(&rep).unwrap();
            assert_eq!(gr.dim(), expect);
        }
    }

    #[test]
    fn double_form_and_cybe() {
        for n in 2..=3 {
            let rd = RootData::sl(n);
            let db = Double::build(&rd);
            assert!(db.lie.is_lie());
            assert!(linalg::is_zero_vec(&db.lie.cybe_residual(&db.r)));
            let h: Vec<Q> = (0..rd.dim()).map(|a| qi(i64::from(a == rd.h(0)))).collect();
            let (hp, hm) = (db.cartan_pm(&h, true), db.cartan_pm(&h, false));
            assert_eq!(db.pair(&hp, &hp), qi(0));
            assert_eq!(db.pair(&hp, &hm), qi(4));
        }
    }

    #[test]
    fn phi_is_an_isomorphism_sl2() {
        let gr = Gr::build(&vector(2)).unwrap();
        let phi = PhiMap::build(&gr);
        phi.verify(&gr).unwrap();
        phi.verify_cobracket(&gr).unwrap();
        // Φ(l⁺_12) = -x⁺
        let v = phi.apply(&gr.unit_f(sym(2, Sign::Plus, 0, 1)));
        let mut expect = vec![Q::zero(); phi.target.dim()];
        expect[0] = qi(-1);
        assert_eq!(v, expect);
    }

    #[test]
    fn full_checks_on_small_cases() {
        let v2 = vector(2);
        for rep in [v2.clone(), vector(3), v2.direct_sum(&v2)] {
            let gr = Gr::build(&rep).unwrap();
            let phi = PhiMap::build(&gr);
            phi.verify(&gr).unwrap();
            phi.verify_cobracket(&gr).unwrap();
            assert!(gr.cobracket_well_defined());
            assert!(gr.cobracket.is_skew());
            assert_eq!(gr.cobracket.co_jacobi_violation(), None);
            assert_eq!(gr.cobracket.cocycle_violation(&gr.lie), None);
            assert_eq!(gr.k_central_violation(), None);
            let g = gr.recover_g().unwrap();
            assert_eq!(g.lie.dim(), rep.root.dim());
            assert_eq!(g.killing_rank, rep.root.dim());
            assert_eq!(g.cartan, rep.root.cartan);
            assert_eq!(gr.cocommutativity_witness().is_some(), !rep.multiplicity_free());
        }
    }
}
