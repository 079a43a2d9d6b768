//! On-disk cache for coefficient tables.
//!
//! Layout (all integers little-endian):
//! magic `NFBTAB\0\0`, format version (u32), label length (u32), label bytes,
//! degree (u32), X (u64), c_K(1..=X) as u32, prime-norm count (u64) and norms
//! (u64), Mangoldt entry count (u64) and entries (u64 n, f64 value).

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::sieve::CoefficientTable;

const MAGIC: &[u8; 8] = b"NFBTAB\0\0";
pub const FORMAT_VERSION: u32 = 1;

pub fn write_table(path: &Path, table: &CoefficientTable) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    w.write_all(MAGIC)?;
    w.write_all(&FORMAT_VERSION.to_le_bytes())?;
    let label = table.label().as_bytes();
    w.write_all(&(label.len() as u32).to_le_bytes())?;
    w.write_all(label)?;
    w.write_all(&table.degree().to_le_bytes())?;
    w.write_all(&table.limit().to_le_bytes())?;
    for &c in &table.coefficients()[1..] {
        w.write_all(&c.to_le_bytes())?;
    }
    w.write_all(&(table.prime_norms().len() as u64).to_le_bytes())?;
    for &q in table.prime_norms() {
        w.write_all(&q.to_le_bytes())?;
    }
    w.write_all(&(table.mangoldt_entries().len() as u64).to_le_bytes())?;
    for &(n, v) in table.mangoldt_entries() {
        w.write_all(&n.to_le_bytes())?;
        w.write_all(&v.to_bits().to_le_bytes())?;
    }
    w.flush()?;
    Ok(())
}

struct Reader<R: Read>(R);

impl<R: Read> Reader<R> {
    fn bytes<const N: usize>(&mut self) -> Result<[u8; N]> {
        let mut buf = [0u8; N];
        self.0.read_exact(&mut buf)?;
        Ok(buf)
    }
    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.bytes()?))
    }
    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.bytes()?))
    }
}

/// Reads a cached table, failing with [`Error::CacheMismatch`] when the header
/// does not match the expected label and limit.
pub fn read_table(path: &Path, label: &str, limit: u64) -> Result<CoefficientTable> {
    let mut r = Reader(BufReader::new(File::open(path)?));
    if &r.bytes::<8>()? != MAGIC {
        return Err(Error::CacheMismatch("bad magic".into()));
    }
    let version = r.u32()?;
    if version != FORMAT_VERSION {
        return Err(Error::CacheMismatch(format!("format version {version}")));
    }
    let len = r.u32()? as usize;
    let mut name = vec![0u8; len];
    r.0.read_exact(&mut name)?;
    if name != label.as_bytes() {
        return Err(Error::CacheMismatch(format!("label {:?}", String::from_utf8_lossy(&name))));
    }
    let degree = r.u32()?;
    let x = r.u64()?;
    if x != limit {
        return Err(Error::CacheMismatch(format!("limit {x} != {limit}")));
    }
    let mut coefficients = Vec::with_capacity(x as usize + 1);
    coefficients.push(0);
    for _ in 0..x {
        coefficients.push(r.u32()?);
    }
    let norms = r.u64()?;
    let prime_norms = (0..norms).map(|_| r.u64()).collect::<Result<Vec<_>>>()?;
    let entries = r.u64()?;
    let mut mangoldt = Vec::with_capacity(entries as usize);
    for _ in 0..entries {
        let n = r.u64()?;
        let v = f64::from_bits(r.u64()?);
        mangoldt.push((n, v));
    }
    Ok(CoefficientTable::assemble(label.to_string(), degree, x, coefficients, mangoldt, prime_norms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::NumberField;
    use crate::sieve::build_table;

    #[test]
    fn round_trip_and_mismatch() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("gi.nftab");
        let t = build_table(&NumberField::quadratic(-4).unwrap(), 5000).unwrap();
        write_table(&path, &t).unwrap();
        let back = read_table(&path, "Q(i)", 5000).unwrap();
        assert_eq!(back.coefficients(), t.coefficients());
        assert_eq!(back.prime_norms(), t.prime_norms());
        assert_eq!(back.mangoldt_entries(), t.mangoldt_entries());
        assert!(matches!(read_table(&path, "Q(i)", 4000), Err(Error::CacheMismatch(_))));
        assert!(matches!(read_table(&path, "Q", 5000), Err(Error::CacheMismatch(_))));
    }
}
