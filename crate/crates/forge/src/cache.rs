//! The `ICT1` table cache: magic `ICT1`, a version byte, the limit as a
//! little-endian `u64`, then one byte per entry for `1..=limit`.

use std::fs;
use std::path::Path;

use defect_forge_core::ComplexityTable;
use sha2::{Digest, Sha256};

use crate::error::{ForgeError, Result};

pub const MAGIC: &[u8; 4] = b"ICT1";
pub const VERSION: u8 = 1;
pub const HEADER_LEN: usize = 13;

pub fn encode(table: &ComplexityTable) -> Vec<u8> {
    let body = table.as_bytes();
    let mut out = Vec::with_capacity(HEADER_LEN + body.len());
    out.extend_from_slice(MAGIC);
    out.push(VERSION);
    out.extend_from_slice(&table.limit().to_le_bytes());
    out.extend_from_slice(body);
    out
}

pub fn decode(bytes: &[u8]) -> Result<ComplexityTable> {
    let bad = |msg: String| ForgeError::Format(msg);
    if bytes.len() < HEADER_LEN || &bytes[..4] != MAGIC {
        return Err(bad("not an ICT1 table file".into()));
    }
    if bytes[4] != VERSION {
        return Err(bad(format!("unsupported table version {}", bytes[4])));
    }
    let limit = u64::from_le_bytes(bytes[5..13].try_into().expect("8 bytes"));
    let body = &bytes[HEADER_LEN..];
    if body.len() as u64 != limit {
        return Err(bad(format!(
            "table header says {limit} entries, file holds {}",
            body.len()
        )));
    }
    for (n, want) in [(1u64, 1u8), (2, 2), (3, 3)] {
        if n <= limit && body[n as usize - 1] != want {
            return Err(bad(format!("entry {n} is {}, expected {want}", body[n as usize - 1])));
        }
    }
    Ok(ComplexityTable::from_entries(body)?)
}

pub fn save(path: &Path, table: &ComplexityTable) -> Result<Vec<u8>> {
    let bytes = encode(table);
    fs::write(path, &bytes).map_err(|e| ForgeError::io(path, e))?;
    Ok(bytes)
}

pub fn load(path: &Path) -> Result<ComplexityTable> {
    let bytes = fs::read(path).map_err(|e| ForgeError::io(path, e))?;
    decode(&bytes)
}

/// Lowercase hex SHA-256.
pub fn checksum(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}
