//! JSON document formats. Integers are serialized as plain JSON numbers
//! while they fit in the 53-bit safe range and as decimal strings beyond
//! it, so forged Pontryagin coefficients survive any JSON consumer; both
//! encodings are accepted on input.

use std::fmt;

use num::bigint::BigInt;
use num::ToPrimitive;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use sixfold::chern::ACStructure;
use sixfold::construct::ThreefoldPackage;
use sixfold::lattice::{CubicForm, IntVector, LinearForm};
use sixfold::wall::{BettiData, WallTuple};

const MAX_SAFE: i64 = (1 << 53) - 1;

/// An arbitrary-precision integer with interoperable JSON encoding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Int(pub BigInt);

impl From<&BigInt> for Int {
    fn from(v: &BigInt) -> Self {
        Int(v.clone())
    }
}

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) if (-MAX_SAFE..=MAX_SAFE).contains(&v) => serializer.serialize_i64(v),
            _ => serializer.serialize_str(&self.0.to_string()),
        }
    }
}

struct IntVisitor;

impl Visitor<'_> for IntVisitor {
    type Value = Int;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or a decimal string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Int, E> {
        Ok(Int(BigInt::from(v)))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Int, E> {
        Ok(Int(BigInt::from(v)))
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> Result<Int, E> {
        Err(E::custom(format!(
            "non-integral number {v}: use an integer or a decimal string"
        )))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Int, E> {
        v.parse::<BigInt>()
            .map(Int)
            .map_err(|_| E::custom(format!("invalid integer literal {v:?}")))
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Int, D::Error> {
        deserializer.deserialize_any(IntVisitor)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CubicEntryDoc {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub v: Int,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct BettiDoc {
    pub b2: u64,
    pub b3: u64,
}

/// The on-disk tuple format: rank, `b3`, spin flag, the sorted nonzero
/// cubic entries, the `p1` coefficients, and optionally Betti data, a
/// first Chern class and a display name.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TupleDocument {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub rank: usize,
    pub b3: u64,
    pub spin: bool,
    pub cubic: Vec<CubicEntryDoc>,
    pub p1: Vec<Int>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub betti: Option<BettiDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c1: Option<Vec<Int>>,
}

impl TupleDocument {
    pub fn to_tuple(&self) -> Result<WallTuple, String> {
        if self.p1.len() != self.rank {
            return Err(format!(
                "field p1: expected {} coefficients, found {}",
                self.rank,
                self.p1.len()
            ));
        }
        let mut form = CubicForm::zero_form(self.rank);
        let mut seen = std::collections::BTreeSet::new();
        for (pos, e) in self.cubic.iter().enumerate() {
            if !(e.i <= e.j && e.j <= e.k) {
                return Err(format!(
                    "field cubic[{pos}]: indices ({}, {}, {}) are not sorted",
                    e.i, e.j, e.k
                ));
            }
            if e.k >= self.rank {
                return Err(format!(
                    "field cubic[{pos}]: index {} out of range for rank {}",
                    e.k, self.rank
                ));
            }
            if !seen.insert((e.i, e.j, e.k)) {
                return Err(format!(
                    "field cubic[{pos}]: duplicate entry ({}, {}, {})",
                    e.i, e.j, e.k
                ));
            }
            form.add_entry(e.i, e.j, e.k, e.v.0.clone())
                .map_err(|err| format!("field cubic[{pos}]: {err}"))?;
        }
        let p1 = LinearForm::new(self.p1.iter().map(|v| v.0.clone()).collect());
        WallTuple::new(self.b3, form, p1, self.spin).map_err(|e| e.to_string())
    }

    pub fn to_betti(&self) -> Result<BettiData, String> {
        let (b2, b3) = match self.betti {
            Some(BettiDoc { b2, b3 }) => {
                if b3 != self.b3 {
                    return Err(format!(
                        "field betti.b3 = {b3} disagrees with b3 = {}",
                        self.b3
                    ));
                }
                (b2, b3)
            }
            None => (self.rank as u64, self.b3),
        };
        BettiData::new(b2, b3).map_err(|e| e.to_string())
    }

    pub fn to_c1(&self) -> Result<Option<ACStructure>, String> {
        match &self.c1 {
            None => Ok(None),
            Some(coords) => {
                if coords.len() != self.rank {
                    return Err(format!(
                        "field c1: expected {} coordinates, found {}",
                        self.rank,
                        coords.len()
                    ));
                }
                Ok(Some(ACStructure::new(IntVector::new(
                    coords.iter().map(|v| v.0.clone()).collect(),
                ))))
            }
        }
    }

    pub fn from_tuple(
        name: Option<String>,
        tuple: &WallTuple,
        betti: Option<&BettiData>,
        c1: Option<&ACStructure>,
    ) -> TupleDocument {
        TupleDocument {
            name,
            rank: tuple.rank(),
            b3: tuple.b3(),
            spin: tuple.spin(),
            cubic: tuple
                .form()
                .entries()
                .map(|(&(i, j, k), v)| CubicEntryDoc {
                    i,
                    j,
                    k,
                    v: Int::from(v),
                })
                .collect(),
            p1: tuple.p1().coeffs().iter().map(Int::from).collect(),
            betti: betti.map(|b| BettiDoc {
                b2: b.b2(),
                b3: b.b3(),
            }),
            c1: c1.map(|a| a.c1().coords().iter().map(Int::from).collect()),
        }
    }

    pub fn from_package(name: Option<String>, pkg: &ThreefoldPackage) -> TupleDocument {
        Self::from_tuple(name, pkg.tuple(), Some(pkg.betti()), Some(pkg.c1()))
    }
}

pub fn int_vector_doc(v: &IntVector) -> Vec<Int> {
    v.coords().iter().map(Int::from).collect()
}

pub fn linear_form_doc(p: &LinearForm) -> Vec<Int> {
    p.coeffs().iter().map(Int::from).collect()
}

/// Parse a comma-separated integer list such as `48,96`.
pub fn parse_int_list(s: &str) -> Result<Vec<BigInt>, String> {
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<BigInt>()
                .map_err(|_| format!("invalid integer {:?} in list {s:?}", part.trim()))
        })
        .collect()
}
