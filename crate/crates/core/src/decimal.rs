//! Serialization of arbitrary-precision values as decimal strings.

use serde::Serializer;

pub(crate) fn as_string<T: std::fmt::Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}
