//! Ordered-field and standard-part laws checked on seeded random germs.
//!
//! Every case draws its inputs from its own ChaCha stream keyed by
//! `(seed, law, case)`, so results do not depend on the thread count.

use std::cmp::Ordering;
use std::fmt;

use hyperline_core::{Classification, Hypernat, Hyperreal, Rational, Result};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::gen;

pub type BinOp = fn(&Hyperreal, &Hyperreal) -> Result<Hyperreal>;

/// The field operations under test. Swapping in a faulty operation shows
/// what a failing report looks like.
#[derive(Clone, Copy)]
pub struct FieldOps {
    pub add: BinOp,
    pub mul: BinOp,
}

impl FieldOps {
    pub fn exact() -> Self {
        FieldOps {
            add: Hyperreal::add,
            mul: Hyperreal::mul,
        }
    }
}

impl Default for FieldOps {
    fn default() -> Self {
        FieldOps::exact()
    }
}

type Sampler = fn(&mut ChaCha8Rng) -> Vec<Hyperreal>;
/// `Ok(None)` when the law holds, `Ok(Some(why))` when it fails.
type Check = fn(&FieldOps, &[Hyperreal]) -> Result<Option<String>>;

pub struct Law {
    pub name: &'static str,
    sample: Sampler,
    check: Check,
}

fn three(rng: &mut ChaCha8Rng) -> Vec<Hyperreal> {
    vec![gen::germ(rng), gen::germ(rng), gen::germ(rng)]
}

fn two(rng: &mut ChaCha8Rng) -> Vec<Hyperreal> {
    vec![gen::germ(rng), gen::germ(rng)]
}

fn one(rng: &mut ChaCha8Rng) -> Vec<Hyperreal> {
    vec![gen::germ(rng)]
}

fn nonzero(rng: &mut ChaCha8Rng) -> Vec<Hyperreal> {
    vec![gen::nonzero_germ(rng)]
}

fn close_pair(rng: &mut ChaCha8Rng) -> Vec<Hyperreal> {
    let x = gen::germ(rng);
    let y = gen::partner(rng, &x);
    vec![x, y]
}

fn close_pair_and_shift(rng: &mut ChaCha8Rng) -> Vec<Hyperreal> {
    let mut v = close_pair(rng);
    v.push(gen::germ(rng));
    v
}

fn limited_pair(rng: &mut ChaCha8Rng) -> Vec<Hyperreal> {
    vec![gen::limited_germ(rng), gen::limited_germ(rng)]
}

fn limited_close_pair(rng: &mut ChaCha8Rng) -> Vec<Hyperreal> {
    let x = gen::limited_germ(rng);
    let y = gen::partner(rng, &x);
    let y = if y.classify().is_limited() {
        y
    } else {
        gen::limited_germ(rng)
    };
    vec![x, y]
}

fn limited_one(rng: &mut ChaCha8Rng) -> Vec<Hyperreal> {
    vec![gen::limited_germ(rng)]
}

fn constants(rng: &mut ChaCha8Rng) -> Vec<Hyperreal> {
    vec![
        Hyperreal::from_rational(gen::rational(rng)),
        Hyperreal::from_rational(gen::rational(rng)),
    ]
}

fn expect_eq(lhs: Hyperreal, rhs: Hyperreal, what: &str) -> Option<String> {
    (lhs != rhs).then(|| format!("{what}: {lhs} != {rhs}"))
}

fn expect(holds: bool, why: impl FnOnce() -> String) -> Option<String> {
    (!holds).then(why)
}

fn add_associative(ops: &FieldOps, v: &[Hyperreal]) -> Result<Option<String>> {
    let (x, y, z) = (&v[0], &v[1], &v[2]);
    let lhs = (ops.add)(&(ops.add)(x, y)?, z)?;
    let rhs = (ops.add)(x, &(ops.add)(y, z)?)?;
    Ok(expect_eq(lhs, rhs, "(x+y)+z vs x+(y+z)"))
}

fn add_commutative(ops: &FieldOps, v: &[Hyperreal]) -> Result<Option<String>> {
    Ok(expect_eq(
        (ops.add)(&v[0], &v[1])?,
        (ops.add)(&v[1], &v[0])?,
        "x+y vs y+x",
    ))
}

fn mul_associative(ops: &FieldOps, v: &[Hyperreal]) -> Result<Option<String>> {
    let (x, y, z) = (&v[0], &v[1], &v[2]);
    let lhs = (ops.mul)(&(ops.mul)(x, y)?, z)?;
    let rhs = (ops.mul)(x, &(ops.mul)(y, z)?)?;
    Ok(expect_eq(lhs, rhs, "(x*y)*z vs x*(y*z)"))
}

fn mul_commutative(ops: &FieldOps, v: &[Hyperreal]) -> Result<Option<String>> {
    Ok(expect_eq(
        (ops.mul)(&v[0], &v[1])?,
        (ops.mul)(&v[1], &v[0])?,
        "x*y vs y*x",
    ))
}

fn distributive(ops: &FieldOps, v: &[Hyperreal]) -> Result<Option<String>> {
    let (x, y, z) = (&v[0], &v[1], &v[2]);
    let lhs = (ops.mul)(x, &(ops.add)(y, z)?)?;
    let rhs = (ops.add)(&(ops.mul)(x, y)?, &(ops.mul)(x, z)?)?;
    Ok(expect_eq(lhs, rhs, "x*(y+z) vs x*y+x*z"))
}

fn add_identity(ops: &FieldOps, v: &[Hyperreal]) -> Result<Option<String>> {
    Ok(expect_eq(
        (ops.add)(&v[0], &Hyperreal::zero())?,
        v[0].clone(),
        "x+0 vs x",
    ))
}

fn mul_identity(ops: &FieldOps, v: &[Hyperreal]) -> Result<Option<String>> {
    Ok(expect_eq(
        (ops.mul)(&v[0], &Hyperreal::one())?,
        v[0].clone(),
        "x*1 vs x",
    ))
}

fn add_inverse(ops: &FieldOps, v: &[Hyperreal]) -> Result<Option<String>> {
    Ok(expect_eq(
        (ops.add)(&v[0], &v[0].neg())?,
        Hyperreal::zero(),
        "x+(-x) vs 0",
    ))
}

fn mul_inverse(ops: &FieldOps, v: &[Hyperreal]) -> Result<Option<String>> {
    Ok(expect_eq(
        (ops.mul)(&v[0], &v[0].recip()?)?,
        Hyperreal::one(),
        "x*(1/x) vs 1",
    ))
}

fn trichotomy(_: &FieldOps, v: &[Hyperreal]) -> Result<Option<String>> {
    let (x, y) = (&v[0], &v[1]);
    let held = [x < y, x == y, x > y].into_iter().filter(|&b| b).count();
    Ok(expect(held == 1, || {
        format!("{held} of x<y, x=y, x>y hold")
    }))
}

fn add_preserves_order(ops: &FieldOps, v: &[Hyperreal]) -> Result<Option<String>> {
    let (x, y, z) = (&v[0], &v[1], &v[2]);
    if x.compare(y) != Ordering::Less {
        return Ok(None);
    }
    let (a, b) = ((ops.add)(x, z)?, (ops.add)(y, z)?);
    Ok(expect(a < b, || {
        format!("x<y but x+z = {a} is not below y+z = {b}")
    }))
}

fn mul_preserves_positivity(ops: &FieldOps, v: &[Hyperreal]) -> Result<Option<String>> {
    let (x, y) = (&v[0], &v[1]);
    if x.signum() <= 0 || y.signum() <= 0 {
        return Ok(None);
    }
    let p = (ops.mul)(x, y)?;
    Ok(expect(p.signum() > 0, || format!("x, y > 0 but x*y = {p}")))
}

fn st_additive(ops: &FieldOps, v: &[Hyperreal]) -> Result<Option<String>> {
    let (x, y) = (&v[0], &v[1]);
    let lhs = (ops.add)(x, y)?.st()?;
    let rhs = x.st()? + y.st()?;
    Ok(expect(lhs == rhs, || {
        format!("st(x+y) = {lhs} but st(x)+st(y) = {rhs}")
    }))
}

fn st_multiplicative(ops: &FieldOps, v: &[Hyperreal]) -> Result<Option<String>> {
    let (x, y) = (&v[0], &v[1]);
    let lhs = (ops.mul)(x, y)?.st()?;
    let rhs = x.st()? * y.st()?;
    Ok(expect(lhs == rhs, || {
        format!("st(x*y) = {lhs} but st(x)*st(y) = {rhs}")
    }))
}

fn st_monotone(_: &FieldOps, v: &[Hyperreal]) -> Result<Option<String>> {
    let (x, y) = (&v[0], &v[1]);
    if x > y {
        return Ok(None);
    }
    let (a, b) = (x.st()?, y.st()?);
    Ok(expect(a <= b, || {
        format!("x <= y but st(x) = {a} > st(y) = {b}")
    }))
}

fn st_remainder(ops: &FieldOps, v: &[Hyperreal]) -> Result<Option<String>> {
    let x = &v[0];
    let s = Hyperreal::from_rational(x.st()?);
    let rest = (ops.add)(x, &s.neg())?.classify();
    Ok(expect(
        matches!(rest, Classification::Zero | Classification::Infinitesimal),
        || format!("x - st(x) is {rest}"),
    ))
}

fn embedding_order(_: &FieldOps, v: &[Hyperreal]) -> Result<Option<String>> {
    let (p, q) = (v[0].st()?, v[1].st()?);
    let (germ, exact) = (v[0].compare(&v[1]), p.cmp(&q));
    Ok(expect(germ == exact, || {
        format!("germ order {germ:?} but rational order {exact:?}")
    }))
}

pub const LAWS: &[Law] = &[
    Law {
        name: "add_associative",
        sample: three,
        check: add_associative,
    },
    Law {
        name: "add_commutative",
        sample: two,
        check: add_commutative,
    },
    Law {
        name: "mul_associative",
        sample: three,
        check: mul_associative,
    },
    Law {
        name: "mul_commutative",
        sample: two,
        check: mul_commutative,
    },
    Law {
        name: "distributive",
        sample: three,
        check: distributive,
    },
    Law {
        name: "add_identity",
        sample: one,
        check: add_identity,
    },
    Law {
        name: "mul_identity",
        sample: one,
        check: mul_identity,
    },
    Law {
        name: "add_inverse",
        sample: one,
        check: add_inverse,
    },
    Law {
        name: "mul_inverse",
        sample: nonzero,
        check: mul_inverse,
    },
    Law {
        name: "trichotomy",
        sample: close_pair,
        check: trichotomy,
    },
    Law {
        name: "add_preserves_order",
        sample: close_pair_and_shift,
        check: add_preserves_order,
    },
    Law {
        name: "mul_preserves_positivity",
        sample: two,
        check: mul_preserves_positivity,
    },
    Law {
        name: "st_additive",
        sample: limited_pair,
        check: st_additive,
    },
    Law {
        name: "st_multiplicative",
        sample: limited_pair,
        check: st_multiplicative,
    },
    Law {
        name: "st_monotone",
        sample: limited_close_pair,
        check: st_monotone,
    },
    Law {
        name: "st_remainder_infinitesimal",
        sample: limited_one,
        check: st_remainder,
    },
    Law {
        name: "embedding_preserves_order",
        sample: constants,
        check: embedding_order,
    },
];

const VARIABLES: [&str; 3] = ["x", "y", "z"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub case: usize,
    pub inputs: Vec<(&'static str, String)>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub law: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub first: Option<Counterexample>,
}

impl Verdict {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.first {
            None => write!(f, "PASS {} ({} cases)", self.law, self.cases),
            Some(cx) => {
                writeln!(
                    f,
                    "FAIL {} ({} of {} cases)",
                    self.law, self.failures, self.cases
                )?;
                write!(f, "  counterexample (case {}):", cx.case)?;
                for (name, value) in &cx.inputs {
                    write!(f, " {name} = {value};")?;
                }
                write!(f, "\n  {}", cx.detail)
            }
        }
    }
}

fn run_case(ops: &FieldOps, law_index: usize, seed: u64, case: usize) -> Option<Counterexample> {
    let law = &LAWS[law_index];
    let mut rng = gen::case_rng(seed, law_index, case);
    let inputs = (law.sample)(&mut rng);
    let detail = match (law.check)(ops, &inputs) {
        Ok(None) => return None,
        Ok(Some(why)) => why,
        Err(e) => format!("raised {e}"),
    };
    Some(Counterexample {
        case,
        inputs: VARIABLES
            .iter()
            .copied()
            .zip(inputs.iter().map(|x| x.to_string()))
            .collect(),
        detail,
    })
}

pub fn check_law(ops: &FieldOps, law_index: usize, seed: u64, cases: usize) -> Verdict {
    let failures: Vec<Counterexample> = (0..cases)
        .into_par_iter()
        .filter_map(|case| run_case(ops, law_index, seed, case))
        .collect();
    Verdict {
        law: LAWS[law_index].name,
        cases,
        failures: failures.len(),
        first: failures.into_iter().next(),
    }
}

/// Every law in [`LAWS`] order.
pub fn run_suite(ops: &FieldOps, seed: u64, cases: usize) -> Vec<Verdict> {
    (0..LAWS.len())
        .map(|i| check_law(ops, i, seed, cases))
        .collect()
}

/// `x·y·(1 + 10^-H)`: off by an infinitesimal relative error, so the
/// standard-part laws still hold while the field laws break.
pub fn perturbed_mul(x: &Hyperreal, y: &Hyperreal) -> Result<Hyperreal> {
    let tiny = Hyperreal::pow_base(&Rational::new(1, 10), Hypernat::H)?;
    let product = x.mul(y)?;
    product.add(&product.mul(&tiny)?)
}
