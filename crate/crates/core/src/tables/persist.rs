// SPDX-License-Identifier: Apache-2.0

//! Binary table files, little-endian:
//!
//! | bytes   | field                                  |
//! |---------|----------------------------------------|
//! | 4       | magic `ICT1`                           |
//! | 1       | format version (1)                     |
//! | 1       | basis (0 = plus-times, 1 = with minus) |
//! | 8       | limit                                  |
//! | limit   | values for n = 1..=limit               |
//! | 4       | CRC-32 of the value bytes              |

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use super::{ComplexityTable, TableError};
use crate::expr::Basis;

pub const MAGIC: &[u8; 4] = b"ICT1";
pub const FORMAT_VERSION: u8 = 1;

pub fn write_table<W: Write>(table: &ComplexityTable, mut out: W) -> Result<(), TableError> {
    let body = &table.values()[1..];
    out.write_all(MAGIC)?;
    out.write_all(&[FORMAT_VERSION, table.basis().code()])?;
    out.write_all(&table.limit().to_le_bytes())?;
    out.write_all(body)?;
    out.write_all(&crc32fast::hash(body).to_le_bytes())?;
    out.flush()?;
    Ok(())
}

fn read_exact_or_format<R: Read>(input: &mut R, buf: &mut [u8], what: &str) -> Result<(), TableError> {
    input.read_exact(buf).map_err(|e| match e.kind() {
        std::io::ErrorKind::UnexpectedEof => TableError::Format(format!("truncated {what}")),
        _ => TableError::Io(e),
    })
}

pub fn read_table<R: Read>(mut input: R) -> Result<ComplexityTable, TableError> {
    let mut header = [0u8; 14];
    read_exact_or_format(&mut input, &mut header, "header")?;
    if &header[..4] != MAGIC {
        return Err(TableError::Format("bad magic".into()));
    }
    if header[4] != FORMAT_VERSION {
        return Err(TableError::Format(format!("unsupported version {}", header[4])));
    }
    let basis = Basis::from_code(header[5])
        .ok_or_else(|| TableError::Format(format!("unknown basis byte {}", header[5])))?;
    let limit = u64::from_le_bytes(header[6..14].try_into().unwrap());
    if limit == 0 || limit > usize::MAX as u64 / 2 {
        return Err(TableError::Format(format!("implausible limit {limit}")));
    }

    let mut body = Vec::new();
    body.try_reserve_exact(limit as usize)
        .map_err(|_| TableError::Resource(format!("cannot allocate {limit} table bytes")))?;
    let got = input.by_ref().take(limit).read_to_end(&mut body)?;
    if got as u64 != limit {
        return Err(TableError::Format(format!("truncated values: {got} of {limit} bytes")));
    }
    let mut crc = [0u8; 4];
    read_exact_or_format(&mut input, &mut crc, "checksum")?;
    let mut extra = [0u8; 1];
    if input.read(&mut extra)? != 0 {
        return Err(TableError::Format("trailing bytes after checksum".into()));
    }
    let stored = u32::from_le_bytes(crc);
    let computed = crc32fast::hash(&body);
    if stored != computed {
        return Err(TableError::ChecksumMismatch { stored, computed });
    }
    ComplexityTable::from_values(basis, body)
}

pub fn save_table(table: &ComplexityTable, path: impl AsRef<Path>) -> Result<(), TableError> {
    write_table(table, BufWriter::new(File::create(path)?))
}

pub fn load_table(path: impl AsRef<Path>) -> Result<ComplexityTable, TableError> {
    read_table(BufReader::new(File::open(path)?))
}
