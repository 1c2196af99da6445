//! JSON serialization with 17-significant-digit reals.
//!
//! Standard float printing trims to the shortest round-trip form, which
//! makes numeric output awkward to diff across toolchains. Reports instead
//! print every real as `d.dddddddddddddddde<exp>` (one leading digit plus
//! sixteen fractional digits), enough to reproduce any f64 bit pattern.
//! Non-finite values serialize as `null`, the only JSON-representable
//! choice. Key order follows struct declaration order, so identical data
//! yields identical bytes.

use std::io;

use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter, Serializer};

use crate::common::CliError;

/// Pretty printer whose `f64` output carries 17 significant digits.
struct SciPretty<'a> {
    inner: PrettyFormatter<'a>,
}

impl SciPretty<'_> {
    fn new() -> Self {
        SciPretty {
            inner: PrettyFormatter::new(),
        }
    }
}

impl Formatter for SciPretty<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.begin_array(writer)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_array(writer)
    }

    fn begin_array_value<W: ?Sized + io::Write>(
        &mut self,
        writer: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.inner.begin_array_value(writer, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_array_value(writer)
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.begin_object(writer)
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_object(writer)
    }

    fn begin_object_key<W: ?Sized + io::Write>(
        &mut self,
        writer: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.inner.begin_object_key(writer, first)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.begin_object_value(writer)
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_object_value(writer)
    }
}

/// Serialize to pretty JSON with 17-significant-digit reals and a trailing
/// newline.
pub fn to_json_bytes<T: Serialize>(value: &T) -> Result<Vec<u8>, CliError> {
    let mut bytes = Vec::new();
    let mut ser = Serializer::with_formatter(&mut bytes, SciPretty::new());
    value
        .serialize(&mut ser)
        .map_err(|e| CliError::Config(format!("cannot serialize report: {e}")))?;
    bytes.push(b'\n');
    Ok(bytes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde::Serialize;

    #[derive(Serialize)]
    struct Demo {
        a: f64,
        b: f64,
        n: u32,
        inf: f64,
    }

    #[test]
    fn reals_carry_17_digits() {
        let text = String::from_utf8(
            to_json_bytes(&Demo {
                a: 4.0,
                b: 0.1,
                n: 7,
                inf: f64::INFINITY,
            })
            .unwrap(),
        )
        .unwrap();
        assert!(text.contains("\"a\": 4.0000000000000000e0"), "{text}");
        assert!(text.contains("\"b\": 1.0000000000000001e-1"), "{text}");
        assert!(text.contains("\"n\": 7"), "{text}");
        assert!(text.contains("\"inf\": null"), "{text}");
        assert!(text.ends_with("}\n"));
    }

    #[test]
    fn output_round_trips_and_is_valid_json() {
        let values = [
            0.0,
            -0.0,
            1.5,
            -2.75e-300,
            9.81,
            f64::MAX,
            f64::MIN_POSITIVE,
            1.0 / 3.0,
        ];
        let bytes = to_json_bytes(&values.to_vec()).unwrap();
        let back: Vec<f64> = serde_json::from_slice(&bytes).unwrap();
        for (orig, round) in values.iter().zip(&back) {
            assert_eq!(orig.to_bits(), round.to_bits(), "{orig}");
        }
    }
}
