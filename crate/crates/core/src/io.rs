//! Plot-ready CSV and a compact binary dump for sampled fields.
//!
//! Binary layout, all little-endian:
//!
//! | bytes | content |
//! |---|---|
//! | 8 | magic `CWFIELD1` |
//! | 4 | `u32` spatial dimension |
//! | 4 | `u32` margin cells |
//! | 8 | `u64` time levels `nt` |
//! | 8 | `u64` nodes per spatial axis `nx` |
//! | 8 | `f64` `dt` |
//! | 8 | `f64` `dx` |
//! | 8 | `f64` first spatial coordinate |
//! | 8 | `f64` support radius `r` |
//! | `8 nt nx^d` | `f64` samples, time slowest, then axes `x1, x2, x3` |

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::seminorms::{Field, Net, SpaceTimeGrid};

pub const MAGIC: &[u8; 8] = b"CWFIELD1";
const HEADER_LEN: usize = 64;

/// Header `t,x1[,x2[,x3]],value`, then one row per node in storage order.
pub fn write_field_csv(field: &Field, w: &mut impl Write) -> std::io::Result<()> {
    let g = field.grid();
    let d = g.dim();
    let mut header = String::from("t");
    for k in 1..=d {
        header.push_str(&format!(",x{k}"));
    }
    writeln!(w, "{header},value")?;
    let ns = g.spatial_len();
    for n in 0..g.nt() {
        let t = g.time(n);
        for (s, v) in field.level(n).iter().enumerate().take(ns) {
            write!(w, "{t:.16e}")?;
            for c in &g.point(s)[..d] {
                write!(w, ",{c:.16e}")?;
            }
            writeln!(w, ",{v:.16e}")?;
        }
    }
    Ok(())
}

pub fn write_field_binary(field: &Field, w: &mut impl Write) -> std::io::Result<()> {
    let g = field.grid();
    w.write_all(MAGIC)?;
    w.write_all(&(g.dim() as u32).to_le_bytes())?;
    w.write_all(&(g.margin_cells() as u32).to_le_bytes())?;
    w.write_all(&(g.nt() as u64).to_le_bytes())?;
    w.write_all(&(g.nx() as u64).to_le_bytes())?;
    for v in [g.dt(), g.dx(), g.coord(0), g.support_radius()] {
        w.write_all(&v.to_le_bytes())?;
    }
    for v in field.samples() {
        w.write_all(&v.to_le_bytes())?;
    }
    Ok(())
}

/// Reads a dump written by [`write_field_binary`], rebuilding its grid.
pub fn read_field_binary(r: &mut impl Read) -> Result<Field> {
    let mut head = [0u8; HEADER_LEN];
    r.read_exact(&mut head)?;
    if &head[..8] != MAGIC {
        return Err(Error::GridMismatch("not a field dump: bad magic".into()));
    }
    let u32_at = |i: usize| u32::from_le_bytes(head[i..i + 4].try_into().unwrap()) as usize;
    let u64_at = |i: usize| u64::from_le_bytes(head[i..i + 8].try_into().unwrap()) as usize;
    let f64_at = |i: usize| f64::from_le_bytes(head[i..i + 8].try_into().unwrap());
    let (dim, margin, nt, nx) = (u32_at(8), u32_at(12), u64_at(16), u64_at(24));
    let (dt, dx, x_min, radius) = (f64_at(32), f64_at(40), f64_at(48), f64_at(56));
    if nt < 2 || nx % 2 == 0 || nx / 2 < margin {
        return Err(Error::GridMismatch(format!(
            "inconsistent dump header: nt = {nt}, nx = {nx}, margin = {margin}"
        )));
    }
    let half = nx / 2;
    let grid = SpaceTimeGrid::with_params(
        dim,
        (nt - 1) as f64 * dt,
        radius,
        (half - margin) as f64 * dx,
        dx,
        dt,
        margin,
    )?;
    if grid.nt() != nt || grid.nx() != nx || (grid.coord(0) - x_min).abs() > 1e-9 * dx {
        return Err(Error::GridMismatch(
            "dump header does not describe a lattice grid".into(),
        ));
    }
    let mut bytes = vec![0u8; grid.len() * 8];
    r.read_exact(&mut bytes)?;
    let samples = bytes
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    Field::from_samples(grid, samples)
}

pub fn save_field_binary(field: &Field, path: &Path) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_field_binary(field, &mut w)?;
    w.flush()?;
    Ok(())
}

pub fn load_field_binary(path: &Path) -> Result<Field> {
    read_field_binary(&mut BufReader::new(File::open(path)?))
}

/// One dump per ladder entry, named `{stem}_{j:02}.bin`.
pub fn save_net_binary(net: &Net, dir: &Path, stem: &str) -> Result<Vec<PathBuf>> {
    net.fields()
        .iter()
        .enumerate()
        .map(|(j, f)| {
            let path = dir.join(format!("{stem}_{j:02}.bin"));
            save_field_binary(f, &path)?;
            Ok(path)
        })
        .collect()
}

pub fn save_field_csv(field: &Field, path: &Path) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_field_csv(field, &mut w)?;
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binary_round_trip() {
        let g = SpaceTimeGrid::with_params(2, 0.5, 0.7, 1.5, 0.25, 0.125, 3).unwrap();
        let f = Field::from_fn(g, |t, x| t + x[0] * 2.0 - x[1].sin());
        let mut buf = Vec::new();
        write_field_binary(&f, &mut buf).unwrap();
        assert_eq!(buf.len(), HEADER_LEN + 8 * g.len());
        let back = read_field_binary(&mut buf.as_slice()).unwrap();
        assert_eq!(back.samples(), f.samples());
        assert_eq!(back.grid().nx(), g.nx());
        assert_eq!(back.grid().nt(), g.nt());
    }

    #[test]
    fn bad_magic_is_rejected() {
        let buf = [0u8; 80];
        assert!(read_field_binary(&mut buf.as_slice()).is_err());
    }

    #[test]
    fn csv_has_one_row_per_node() {
        let g = SpaceTimeGrid::new(1, 0.5, 0.5, 0.25, 0.25).unwrap();
        let f = Field::from_fn(g, |t, x| t * x[0]);
        let mut buf = Vec::new();
        write_field_csv(&f, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("t,x1,value"));
        assert_eq!(lines.count(), g.len());
    }
}
