//! Serde helpers: big integers as exact JSON numbers, subsets as bitmask integers.

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use crate::subset::Subset;

fn number(v: &BigInt) -> serde_json::Number {
    v.to_string().parse().expect("integer literal is a valid JSON number")
}

pub fn bigint<S: Serializer>(v: &BigInt, ser: S) -> Result<S::Ok, S::Error> {
    number(v).serialize(ser)
}

pub fn bigints<S: Serializer>(v: &[BigInt], ser: S) -> Result<S::Ok, S::Error> {
    ser.collect_seq(v.iter().map(number))
}

pub fn subset<S: Serializer>(s: &Subset, ser: S) -> Result<S::Ok, S::Error> {
    ser.serialize_u64(s.bits())
}

pub fn subsets<S: Serializer>(v: &[Subset], ser: S) -> Result<S::Ok, S::Error> {
    ser.collect_seq(v.iter().map(|s| s.bits()))
}
