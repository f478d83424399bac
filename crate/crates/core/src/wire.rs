//! Canonical byte framing used everywhere a value is hashed or committed.
//!
//! Every part is prefixed with its length as an 8-byte big-endian integer, so
//! the concatenation of framed parts is injective: ("ab", "c") and ("a", "bc")
//! can never collide. Domain tags are framed like any other part and always
//! come first.

/// Length-prefix a single part.
pub fn frame(part: &[u8]) -> Vec<u8> {
    let mut out = Vec::with_capacity(8 + part.len());
    out.extend_from_slice(&(part.len() as u64).to_be_bytes());
    out.extend_from_slice(part);
    out
}

/// Frame a domain tag followed by the given parts.
pub fn framed(tag: &str, parts: &[&[u8]]) -> Vec<u8> {
    let mut out = frame(tag.as_bytes());
    for p in parts {
        out.extend_from_slice(&frame(p));
    }
    out
}

/// Incremental reader for a sequence of framed parts, used when a committed
/// tuple or a wire field has to be split back into its components.
pub struct FrameReader<'a> {
    bytes: &'a [u8],
}

impl<'a> FrameReader<'a> {
    pub fn new(bytes: &'a [u8]) -> Self {
        Self { bytes }
    }

    pub fn next(&mut self) -> Option<&'a [u8]> {
        if self.bytes.len() < 8 {
            return None;
        }
        let mut len_bytes = [0u8; 8];
        len_bytes.copy_from_slice(&self.bytes[..8]);
        let len = u64::from_be_bytes(len_bytes) as usize;
        if self.bytes.len() < 8 + len {
            return None;
        }
        let part = &self.bytes[8..8 + len];
        self.bytes = &self.bytes[8 + len..];
        Some(part)
    }

    pub fn is_empty(&self) -> bool {
        self.bytes.is_empty()
    }
}

/// Serde adapter: byte fields appear as lowercase hex strings in transcripts
/// and persisted records.
pub mod hexbytes {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(bytes: &Vec<u8>, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&hex::encode(bytes))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Vec<u8>, D::Error> {
        let s = String::deserialize(de)?;
        hex::decode(&s).map_err(serde::de::Error::custom)
    }
}
