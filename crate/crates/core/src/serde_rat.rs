// SPDX-License-Identifier: Apache-2.0

//! Rationals serialize as reduced "num/den" strings ("num" when the denominator is 1).

use serde::{Deserialize, Deserializer, Serializer};

use crate::arith::{parse_rat, Rat};

pub fn serialize<S: Serializer>(x: &Rat, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
    let s = String::deserialize(d)?;
    parse_rat(&s).map_err(serde::de::Error::custom)
}
