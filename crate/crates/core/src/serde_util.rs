use num_bigint::BigUint;
use serde::Serializer;

pub(crate) fn big_as_string<S: Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}
