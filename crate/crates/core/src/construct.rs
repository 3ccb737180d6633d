//! Symbolic constructions producing classifying tuples together with
//! Betti data and a first Chern class: point blow-ups and blow-downs,
//! P^1-bundles over surfaces, Dolgachev surfaces, and a fixed gallery of
//! reference examples.

use num::bigint::BigInt;
use num::{One, Signed, Zero};

use crate::chern::{chern_numbers, ACStructure, ChernNumbers};
use crate::error::{Error, Result};
use crate::lattice::{
    change_basis, integer_kernel_basis, CubicForm, IntVector, LinearForm, SquareMatrix,
    UnimodularMap,
};
use crate::wall::{BettiData, WallTuple};

/// Default coordinate box for the blow-down candidate search.
pub const DEFAULT_BLOW_DOWN_BOX: u64 = 10;

/// Invariants of a compact Kahler surface used as the base of bundle
/// constructions. The lattice is a working sublattice of the full
/// degree-two cohomology; `b2` records the full rank, which may exceed
/// the working rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceData {
    rank: usize,
    pairing: Vec<Vec<BigInt>>,
    c1s: IntVector,
    euler: BigInt,
    b2: u64,
}

impl SurfaceData {
    pub fn new(
        pairing: Vec<Vec<BigInt>>,
        c1s: IntVector,
        euler: BigInt,
        b2: u64,
    ) -> Result<Self> {
        let rank = pairing.len();
        for row in &pairing {
            if row.len() != rank {
                return Err(Error::DimensionMismatch {
                    expected: rank,
                    found: row.len(),
                });
            }
        }
        for i in 0..rank {
            for j in 0..rank {
                if pairing[i][j] != pairing[j][i] {
                    return Err(Error::InvalidConstruction(
                        "intersection pairing is not symmetric".into(),
                    ));
                }
            }
        }
        if c1s.rank() != rank {
            return Err(Error::DimensionMismatch {
                expected: rank,
                found: c1s.rank(),
            });
        }
        let s = SurfaceData {
            rank,
            pairing,
            c1s,
            euler,
            b2,
        };
        // Noether: c1^2 + e = 12 chi(O)
        let noether = s.pair(&s.c1s.clone(), &s.c1s.clone())? + &s.euler;
        if !(noether % BigInt::from(12)).is_zero() {
            return Err(Error::InvalidConstruction(
                "c1^2 + euler is not divisible by 12".into(),
            ));
        }
        Ok(s)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn c1s(&self) -> &IntVector {
        &self.c1s
    }

    pub fn euler(&self) -> &BigInt {
        &self.euler
    }

    pub fn b2(&self) -> u64 {
        self.b2
    }

    pub fn pair(&self, a: &IntVector, b: &IntVector) -> Result<BigInt> {
        if a.rank() != self.rank || b.rank() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                found: a.rank().max(b.rank()),
            });
        }
        let mut acc = BigInt::zero();
        for i in 0..self.rank {
            for j in 0..self.rank {
                acc += a.get(i) * &self.pairing[i][j] * b.get(j);
            }
        }
        Ok(acc)
    }

    pub fn chi_o(&self) -> BigInt {
        let c1sq = self.pair(&self.c1s, &self.c1s).expect("validated ranks");
        (c1sq + &self.euler) / BigInt::from(12)
    }

    /// The projective plane: working lattice `Z h` with `h^2 = 1`,
    /// `c1 = 3h`, Euler number 3.
    pub fn projective_plane() -> SurfaceData {
        SurfaceData::new(
            vec![vec![BigInt::one()]],
            IntVector::from_i64(&[3]),
            BigInt::from(3),
            1,
        )
        .expect("plane data is valid")
    }
}

/// A Dolgachev surface of odd order `q >= 3`, modeled by its rank-2
/// hyperbolic working sublattice spanned by the primitive isotropic class
/// `f'` (with `c1 = -(q-2) f'`) and a dual class `h`.
pub fn dolgachev_surface(q: u64) -> Result<SurfaceData> {
    if q < 3 || q % 2 == 0 {
        return Err(Error::InvalidConstruction(format!(
            "Dolgachev order must be odd and at least 3, got {q}"
        )));
    }
    SurfaceData::new(
        vec![
            vec![BigInt::zero(), BigInt::one()],
            vec![BigInt::one(), BigInt::zero()],
        ],
        IntVector::new(vec![-BigInt::from(q - 2), BigInt::zero()]),
        BigInt::from(12),
        10,
    )
}

/// A classifying tuple bundled with Betti data, a first Chern class and a
/// record of how it was built. Construction validates that the Chern
/// numbers are computable (rank and parity consistency).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreefoldPackage {
    tuple: WallTuple,
    betti: BettiData,
    c1: ACStructure,
    provenance: Vec<String>,
}

impl ThreefoldPackage {
    pub fn new(
        tuple: WallTuple,
        betti: BettiData,
        c1: ACStructure,
        provenance: Vec<String>,
    ) -> Result<Self> {
        chern_numbers(&tuple, &betti, &c1)?;
        Ok(ThreefoldPackage {
            tuple,
            betti,
            c1,
            provenance,
        })
    }

    pub fn tuple(&self) -> &WallTuple {
        &self.tuple
    }

    pub fn betti(&self) -> &BettiData {
        &self.betti
    }

    pub fn c1(&self) -> &ACStructure {
        &self.c1
    }

    pub fn provenance(&self) -> &[String] {
        &self.provenance
    }

    pub fn chern(&self) -> ChernNumbers {
        chern_numbers(&self.tuple, &self.betti, &self.c1).expect("validated at construction")
    }

    /// Equality of the mathematical content, ignoring the construction
    /// trace.
    pub fn same_invariants(&self, other: &ThreefoldPackage) -> bool {
        self.tuple == other.tuple && self.betti == other.betti && self.c1 == other.c1
    }
}

/// Blow up a point: the lattice gains an exceptional class `e` with
/// `e^3 = 1` and no mixed products, `p1(e) = 4`, `c1` gains `-2e`;
/// `b2` grows by one and the Euler number by two.
pub fn blow_up_point(pkg: &ThreefoldPackage) -> ThreefoldPackage {
    let t = pkg.tuple();
    let n = t.rank();

    let mut form = CubicForm::zero_form(n + 1);
    for (&(i, j, k), v) in t.form().entries() {
        form.add_entry(i, j, k, v.clone()).expect("indices in range");
    }
    form.add_entry(n, n, n, BigInt::one()).expect("new index in range");

    let mut p1 = t.p1().coeffs().to_vec();
    p1.push(BigInt::from(4));

    let mut c1 = pkg.c1().c1().coords().to_vec();
    c1.push(BigInt::from(-2));

    let tuple = WallTuple::new(t.b3(), form, LinearForm::new(p1), t.spin())
        .expect("b3 and ranks preserved");
    let betti = BettiData::new(pkg.betti().b2() + 1, pkg.betti().b3())
        .expect("b3 preserved");
    let mut provenance = pkg.provenance().to_vec();
    provenance.push("blow_up_point".into());
    ThreefoldPackage::new(
        tuple,
        betti,
        ACStructure::new(IntVector::new(c1)),
        provenance,
    )
    .expect("blow-up preserves Chern parity")
}

/// The cup-product matrix `B_e[i][j] = F(e, e_i, e_j)` whose integer
/// kernel is the candidate pullback sublattice.
fn cup_matrix(form: &CubicForm, e: &IntVector) -> Result<Vec<Vec<BigInt>>> {
    let n = form.rank();
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let ei = IntVector::basis(n, i);
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let ej = IntVector::basis(n, j);
            row.push(form.eval(e, &ei, &ej)?);
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Check the blow-up splitting conditions for `e` and return the kernel
/// basis of `cup with e` when they hold.
fn blow_down_split(t: &WallTuple, e: &IntVector) -> Result<Vec<IntVector>> {
    let n = t.rank();
    if e.rank() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: e.rank(),
        });
    }
    if t.form().eval_diag(e)? != BigInt::one() {
        return Err(Error::NotABlowDownClass("cube of the class is not 1".into()));
    }
    if t.p1().eval(e)? != BigInt::from(4) {
        return Err(Error::NotABlowDownClass("p1 of the class is not 4".into()));
    }
    let kernel = integer_kernel_basis(&cup_matrix(t.form(), e)?, n);
    if kernel.len() != n - 1 {
        return Err(Error::NotABlowDownClass(format!(
            "kernel of cup with the class has rank {}, expected {}",
            kernel.len(),
            n - 1
        )));
    }
    // the kernel plus the class must span the whole lattice
    let rows: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            kernel
                .iter()
                .map(|k| k.get(i).clone())
                .chain(std::iter::once(e.get(i).clone()))
                .collect()
        })
        .collect();
    let det = SquareMatrix::from_rows(rows)?.determinant();
    if det.abs() != BigInt::one() {
        return Err(Error::NotABlowDownClass(format!(
            "kernel and class span a sublattice of index {}",
            det.abs()
        )));
    }
    Ok(kernel)
}

/// All classes inside the coordinate box that satisfy the blow-up
/// splitting conditions: cube 1, `p1` value 4, corank-1 kernel of the cup
/// map, and a unimodular splitting. An empty list means no candidate was
/// found in the box, not that none exists.
pub fn blow_down_candidates(t: &WallTuple, box_radius: u64) -> Vec<IntVector> {
    let n = t.rank();
    if n < 2 {
        return Vec::new();
    }
    let b = box_radius as i64;
    let mut out = Vec::new();
    let mut coords = vec![-b; n];
    loop {
        let e = IntVector::from_i64(&coords);
        if !e.is_zero() && blow_down_split(t, &e).is_ok() {
            out.push(e);
        }
        let mut idx = n;
        let mut done = false;
        loop {
            if idx == 0 {
                done = true;
                break;
            }
            idx -= 1;
            if coords[idx] < b {
                coords[idx] += 1;
                for c in &mut coords[idx + 1..] {
                    *c = -b;
                }
                break;
            }
        }
        if done {
            break;
        }
    }
    out.sort();
    out
}

/// Contract the exceptional class `e`: the exact inverse of
/// [`blow_up_point`] in the split basis. Requires the splitting
/// conditions and that `c1` has coefficient `-2` on the `e`-summand.
pub fn blow_down(pkg: &ThreefoldPackage, e: &IntVector) -> Result<ThreefoldPackage> {
    let t = pkg.tuple();
    let n = t.rank();
    if n < 2 {
        return Err(Error::NotABlowDownClass(
            "rank must be at least 2 to blow down".into(),
        ));
    }
    let kernel = blow_down_split(t, e)?;

    // basis change onto (kernel basis, e); the exceptional class is last
    let rows: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            kernel
                .iter()
                .map(|k| k.get(i).clone())
                .chain(std::iter::once(e.get(i).clone()))
                .collect()
        })
        .collect();
    let u = UnimodularMap::new(SquareMatrix::from_rows(rows)?)?;
    let (form_split, p1_split) = change_basis(t.form(), t.p1(), &u)?;
    let c1_split = u.inverse().apply(pkg.c1().c1())?;

    if c1_split.get(n - 1) != &BigInt::from(-2) {
        return Err(Error::NotABlowDownClass(format!(
            "c1 has coefficient {} on the exceptional summand, expected -2",
            c1_split.get(n - 1)
        )));
    }
    debug_assert_eq!(form_split.entry(n - 1, n - 1, n - 1), BigInt::one());
    debug_assert_eq!(p1_split.get(n - 1), &BigInt::from(4));

    let mut form = CubicForm::zero_form(n - 1);
    for (&(i, j, k), v) in form_split.entries() {
        if k < n - 1 {
            form.add_entry(i, j, k, v.clone())?;
        } else if !(i == n - 1 && j == n - 1 && k == n - 1) {
            // mixed entries with the exceptional class must vanish for a
            // genuine splitting
            return Err(Error::NotABlowDownClass(format!(
                "mixed cup product ({i},{j},{k}) = {v} does not vanish"
            )));
        }
    }
    let p1 = LinearForm::new(p1_split.coeffs()[..n - 1].to_vec());
    let c1 = IntVector::new(c1_split.coords()[..n - 1].to_vec());

    let tuple = WallTuple::new(t.b3(), form, p1, t.spin())?;
    let betti = BettiData::new(pkg.betti().b2() - 1, pkg.betti().b3())?;
    let mut provenance = pkg.provenance().to_vec();
    provenance.push("blow_down".into());
    ThreefoldPackage::new(tuple, betti, ACStructure::new(c1), provenance)
}

/// Degree-two class `f* base + fiber * y` on a P^1-bundle.
struct TwoClass {
    base: IntVector,
    fiber: BigInt,
}

/// Degree-four class `f*(v) . y + m . [fiber point]`.
struct FourClass {
    v: IntVector,
    m: BigInt,
}

fn mul_two(s: &SurfaceData, omega: &IntVector, a: &TwoClass, b: &TwoClass) -> FourClass {
    // (f*a0 + a1 y)(f*b0 + b1 y) with y^2 = -f*omega . y
    let v = a
        .base
        .scale(&b.fiber)
        .add(&b.base.scale(&a.fiber))
        .expect("equal ranks")
        .sub(&omega.scale(&(&a.fiber * &b.fiber)))
        .expect("equal ranks");
    let m = s.pair(&a.base, &b.base).expect("equal ranks");
    FourClass { v, m }
}

fn pair_four_two(
    s: &SurfaceData,
    omega: &IntVector,
    four: &FourClass,
    two: &TwoClass,
) -> BigInt {
    // (f*v . y + m ell)(f*a + b y)
    //   = v.a + b (y^2 . f*v) + m b = v.a - b (v.omega) + m b
    let va = s.pair(&four.v, &two.base).expect("equal ranks");
    let vo = s.pair(&four.v, omega).expect("equal ranks");
    va - &two.fiber * vo + &four.m * &two.fiber
}

/// The P^1-bundle `P(L + O)` over a surface with `c1(L) = omega`, as a
/// package: ring structure from `y^2 = -omega . y`, first Chern class
/// `f*(c1(S) + omega) + 2y`, second Chern class
/// `c2(S) + c1(S)(2y + omega)`, and `p1 = c1^2 - 2 c2` computed in the
/// ring. Spin exactly when `c1(S) + omega` is even.
pub fn p1_bundle(s: &SurfaceData, omega: &IntVector) -> Result<ThreefoldPackage> {
    let n = s.rank();
    if omega.rank() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: omega.rank(),
        });
    }
    if s.euler() != &(BigInt::from(2) + BigInt::from(s.b2())) {
        return Err(Error::InvalidConstruction(
            "bundle base must be simply connected (euler = 2 + b2)".into(),
        ));
    }

    // ring: F(f*a, f*b, y) = a.b, F(f*a, y, y) = -a.omega, y^3 = omega^2
    let mut form = CubicForm::zero_form(n + 1);
    for i in 0..n {
        let ei = IntVector::basis(n, i);
        for j in i..n {
            let ej = IntVector::basis(n, j);
            let v = s.pair(&ei, &ej)?;
            if !v.is_zero() {
                form.add_entry(i, j, n, v)?;
            }
        }
        let v = -s.pair(&ei, omega)?;
        if !v.is_zero() {
            form.add_entry(i, n, n, v)?;
        }
    }
    let omega_sq = s.pair(omega, omega)?;
    if !omega_sq.is_zero() {
        form.add_entry(n, n, n, omega_sq)?;
    }

    let u = s.c1s().add(omega)?;
    let c1_two = TwoClass {
        base: u.clone(),
        fiber: BigInt::from(2),
    };
    let c1_sq = mul_two(s, omega, &c1_two, &c1_two);
    let c2_class = FourClass {
        v: s.c1s().scale(&BigInt::from(2)),
        m: s.euler().clone() + s.pair(s.c1s(), omega)?,
    };
    let p1_four = FourClass {
        v: c1_sq.v.sub(&c2_class.v.scale(&BigInt::from(2)))?,
        m: c1_sq.m - BigInt::from(2) * &c2_class.m,
    };

    // p1 as a linear form on the basis (f*e_0, .., f*e_{n-1}, y)
    let mut p1_coeffs = Vec::with_capacity(n + 1);
    for i in 0..n {
        let two = TwoClass {
            base: IntVector::basis(n, i),
            fiber: BigInt::zero(),
        };
        p1_coeffs.push(pair_four_two(s, omega, &p1_four, &two));
    }
    p1_coeffs.push(pair_four_two(
        s,
        omega,
        &p1_four,
        &TwoClass {
            base: IntVector::zero(n),
            fiber: BigInt::one(),
        },
    ));

    let spin = u.is_even();
    let mut c1_coords = u.coords().to_vec();
    c1_coords.push(BigInt::from(2));

    let tuple = WallTuple::new(0, form, LinearForm::new(p1_coeffs), spin)?;
    let betti = BettiData::new(s.b2() + 1, 0)?;
    ThreefoldPackage::new(
        tuple,
        betti,
        ACStructure::new(IntVector::new(c1_coords)),
        vec![format!("p1_bundle(rank {n} base)")],
    )
}

/// The unbounded family member `X_n = P(O(2n+1) + O)` over the plane.
pub fn xn_bundle(n: u64) -> ThreefoldPackage {
    let plane = SurfaceData::projective_plane();
    let omega = IntVector::new(vec![BigInt::from(2 * n + 1)]);
    p1_bundle(&plane, &omega).expect("plane bundle data is valid")
}

/// The Dolgachev-based bundle with the fixed twist `omega = f' + 2h`.
pub fn dolgachev_bundle(q: u64) -> Result<ThreefoldPackage> {
    let s = dolgachev_surface(q)?;
    p1_bundle(&s, &IntVector::from_i64(&[1, 2]))
}

/// Canonical-degree transform for blowing up a smooth rational curve with
/// normal bundle of degree `deg_normal`: `K^3` becomes
/// `K^3 + 2 deg_normal + 6`. The companion Betti deltas are `b2 + 1` and
/// `euler + 2`. Restricted to rational curves; no general-genus formula
/// is exposed.
pub fn blow_up_rational_curve_delta(k3: &BigInt, deg_normal: &BigInt) -> BigInt {
    k3 + BigInt::from(2) * deg_normal + BigInt::from(6)
}

/// A named reference example with classification flags used by the
/// soundness suites.
#[derive(Debug, Clone)]
pub struct GalleryEntry {
    pub name: &'static str,
    pub package: ThreefoldPackage,
    /// Whether the underlying manifold carries a Kahler structure (all
    /// current entries do; certification must stay inconclusive on them).
    pub kaehler: bool,
    pub uniruled: bool,
    /// Content of the first Chern class (0 for `c1 = 0`).
    pub c1_divisibility: BigInt,
}

fn simple_package(
    name: &str,
    cube: i64,
    p1: i64,
    spin: bool,
    b3: u64,
    c1: i64,
) -> ThreefoldPackage {
    let tuple = WallTuple::new(
        b3,
        CubicForm::from_i64_entries(1, &[((0, 0, 0), cube)]).unwrap(),
        LinearForm::from_i64(&[p1]),
        spin,
    )
    .unwrap();
    let betti = BettiData::new(1, b3).unwrap();
    ThreefoldPackage::new(
        tuple,
        betti,
        ACStructure::new(IntVector::from_i64(&[c1])),
        vec![name.into()],
    )
    .unwrap()
}

/// The fixed example gallery: projective space, the quadric threefold
/// (non-spin, `c1` divisible by 3), the point blow-up of projective
/// space, the first member of the unbounded bundle family, the
/// canonical-twist bundle over the plane, and a quintic hypersurface as a
/// non-uniruled control.
pub fn gallery() -> Vec<GalleryEntry> {
    let p3 = simple_package("p3", 1, 4, true, 0, 4);
    let quadric = simple_package("quadric", 2, 2, false, 0, 3);
    let quintic = simple_package("quintic", 5, -100, true, 204, 0);
    let blpt = blow_up_point(&p3);
    let x1 = xn_bundle(1);
    let pk = p1_bundle(
        &SurfaceData::projective_plane(),
        &IntVector::from_i64(&[-3]),
    )
    .expect("canonical twist over the plane");

    let div = |p: &ThreefoldPackage| p.c1().c1().content();
    vec![
        GalleryEntry {
            name: "p3",
            c1_divisibility: div(&p3),
            package: p3,
            kaehler: true,
            uniruled: true,
        },
        GalleryEntry {
            name: "quadric",
            c1_divisibility: div(&quadric),
            package: quadric,
            kaehler: true,
            uniruled: true,
        },
        GalleryEntry {
            name: "bl-pt-p3",
            c1_divisibility: div(&blpt),
            package: blpt,
            kaehler: true,
            uniruled: true,
        },
        GalleryEntry {
            name: "x1-bundle",
            c1_divisibility: div(&x1),
            package: x1,
            kaehler: true,
            uniruled: true,
        },
        GalleryEntry {
            name: "pk-p2-bundle",
            c1_divisibility: div(&pk),
            package: pk,
            kaehler: true,
            uniruled: true,
        },
        GalleryEntry {
            name: "quintic",
            c1_divisibility: div(&quintic),
            package: quintic,
            kaehler: true,
            uniruled: false,
        },
    ]
}
