//! Binary containers, CSV exports and the tab-separated report format.
//!
//! All binary fields are little-endian. Quaternions are stored as `(r0, r1, r2, r3)`.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::analysis::VerificationReport;
use crate::error::{Error, Result};
use crate::grid::{FreqGridSpec, GridSpec, QSignal2D, TFGrid4D, TfField, TfKind};
use crate::params::ParamPair;
use crate::quaternion::Quaternion;
use crate::transforms::QQPFTResult;

pub const SIGNAL_MAGIC: [u8; 8] = *b"QSIG1\0\0\0";
pub const TRANSFORM_MAGIC: [u8; 8] = *b"QQPF1\0\0\0";
pub const FIELD_MAGIC: [u8; 8] = *b"QTF41\0\0\0";

const FLAG_CHIRP_ALIASING: u32 = 1;

/// Kind of container, identified by its magic bytes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FileKind {
    Signal,
    Transform,
    Field,
}

pub fn detect_kind(magic: &[u8; 8]) -> Result<FileKind> {
    match *magic {
        SIGNAL_MAGIC => Ok(FileKind::Signal),
        TRANSFORM_MAGIC => Ok(FileKind::Transform),
        FIELD_MAGIC => Ok(FileKind::Field),
        _ => Err(Error::Format(format!("unknown magic {:?}", String::from_utf8_lossy(magic)))),
    }
}

pub fn read_magic(path: &Path) -> Result<FileKind> {
    let mut magic = [0u8; 8];
    File::open(path)?.read_exact(&mut magic)?;
    detect_kind(&magic)
}

fn put_u32<W: Write>(w: &mut W, v: u32) -> Result<()> {
    w.write_all(&v.to_le_bytes())?;
    Ok(())
}

fn put_f64<W: Write>(w: &mut W, v: f64) -> Result<()> {
    w.write_all(&v.to_le_bytes())?;
    Ok(())
}

fn put_quaternions<W: Write>(w: &mut W, values: &[Quaternion]) -> Result<()> {
    for q in values {
        for v in q.to_array() {
            put_f64(w, v)?;
        }
    }
    Ok(())
}

fn put_size<W: Write>(w: &mut W, n: usize) -> Result<()> {
    let v = u32::try_from(n).map_err(|_| Error::Format(format!("size {n} exceeds u32")))?;
    put_u32(w, v)
}

fn put_params<W: Write>(w: &mut W, p: &ParamPair) -> Result<()> {
    for v in p.to_array() {
        put_f64(w, v)?;
    }
    Ok(())
}

fn put_freq<W: Write>(w: &mut W, freq: &FreqGridSpec) -> Result<()> {
    put_size(w, freq.n())?;
    for &v in freq.xi1().iter().chain(freq.xi2()) {
        put_f64(w, v)?;
    }
    Ok(())
}

fn get_u32<R: Read>(r: &mut R) -> Result<u32> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b).map_err(truncated)?;
    Ok(u32::from_le_bytes(b))
}

fn get_f64<R: Read>(r: &mut R) -> Result<f64> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b).map_err(truncated)?;
    Ok(f64::from_le_bytes(b))
}

fn truncated(e: std::io::Error) -> Error {
    if e.kind() == std::io::ErrorKind::UnexpectedEof {
        Error::Format("file is truncated".into())
    } else {
        Error::Io(e)
    }
}

fn get_quaternions<R: Read>(r: &mut R, count: usize) -> Result<Vec<Quaternion>> {
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        out.push(Quaternion::new(get_f64(r)?, get_f64(r)?, get_f64(r)?, get_f64(r)?));
    }
    Ok(out)
}

fn get_params<R: Read>(r: &mut R) -> Result<ParamPair> {
    let mut v = [0.0; 10];
    for slot in &mut v {
        *slot = get_f64(r)?;
    }
    ParamPair::from_array(v)
}

fn get_freq<R: Read>(r: &mut R) -> Result<FreqGridSpec> {
    let n = get_u32(r)? as usize;
    let mut axes = vec![0.0; 2 * n];
    for v in &mut axes {
        *v = get_f64(r)?;
    }
    let xi2 = axes.split_off(n);
    FreqGridSpec::from_axes(axes, xi2)
}

fn get_grid<R: Read>(r: &mut R) -> Result<GridSpec> {
    let n = get_u32(r)? as usize;
    let extent = get_f64(r)?;
    GridSpec::new(n, extent)
}

fn expect_magic<R: Read>(r: &mut R, magic: [u8; 8]) -> Result<()> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b).map_err(truncated)?;
    if b != magic {
        return Err(Error::Format(format!(
            "expected {:?} container, found {:?}",
            String::from_utf8_lossy(&magic),
            String::from_utf8_lossy(&b)
        )));
    }
    Ok(())
}

fn expect_end<R: Read>(r: &mut R) -> Result<()> {
    let mut b = [0u8; 1];
    if r.read(&mut b)? != 0 {
        return Err(Error::Format("trailing bytes after payload".into()));
    }
    Ok(())
}

pub fn write_signal<W: Write>(w: &mut W, f: &QSignal2D) -> Result<()> {
    w.write_all(&SIGNAL_MAGIC)?;
    put_size(w, f.n())?;
    put_f64(w, f.spec().extent())?;
    put_quaternions(w, f.samples())
}

pub fn read_signal<R: Read>(r: &mut R) -> Result<QSignal2D> {
    expect_magic(r, SIGNAL_MAGIC)?;
    let spec = get_grid(r)?;
    let samples = get_quaternions(r, spec.len())?;
    expect_end(r)?;
    QSignal2D::new(spec, samples)
}

/// Header: source grid, parameters, flags, frequency axes; then `ξ1 × ξ2` values.
pub fn write_transform<W: Write>(w: &mut W, q: &QQPFTResult) -> Result<()> {
    w.write_all(&TRANSFORM_MAGIC)?;
    put_size(w, q.source().n())?;
    put_f64(w, q.source().extent())?;
    put_params(w, q.params())?;
    put_u32(w, if q.chirp_aliasing() { FLAG_CHIRP_ALIASING } else { 0 })?;
    put_freq(w, q.freq())?;
    put_quaternions(w, q.values())
}

pub fn read_transform<R: Read>(r: &mut R) -> Result<QQPFTResult> {
    expect_magic(r, TRANSFORM_MAGIC)?;
    let source = get_grid(r)?;
    let params = get_params(r)?;
    let flags = get_u32(r)?;
    let freq = get_freq(r)?;
    let values = get_quaternions(r, freq.len())?;
    expect_end(r)?;
    QQPFTResult::new(params, freq, values, source, flags & FLAG_CHIRP_ALIASING != 0)
}

/// Bytes a field container of this shape occupies.
pub fn field_file_size(nx: usize, nxi: usize) -> u64 {
    let header = 8 + 4 + 8 + 4 + 80 + 4 + 16 * nxi as u64;
    header + (nx as u64).pow(2) * (nxi as u64).pow(2) * 32
}

/// Header: window-center grid, kind, parameters, frequency axes; then values in
/// `(x1, x2, ξ1, ξ2)` order. Slices are written as they are produced.
pub fn write_field<W: Write, F: TfField + ?Sized>(w: &mut W, field: &F) -> Result<()> {
    w.write_all(&FIELD_MAGIC)?;
    put_size(w, field.xspec().n())?;
    put_f64(w, field.xspec().extent())?;
    put_u32(w, field.kind().code())?;
    put_params(w, field.params())?;
    put_freq(w, field.xispec())?;
    let mut result = Ok(());
    field.for_each_slice(|_, _, s| {
        if result.is_ok() {
            result = put_quaternions(w, s);
        }
    });
    result
}

pub fn read_field<R: Read>(r: &mut R) -> Result<TFGrid4D> {
    expect_magic(r, FIELD_MAGIC)?;
    let xspec = get_grid(r)?;
    let code = get_u32(r)?;
    let kind = TfKind::from_code(code).ok_or_else(|| Error::Format(format!("unknown field kind {code}")))?;
    let params = get_params(r)?;
    let xispec = get_freq(r)?;
    let values = get_quaternions(r, xspec.len() * xispec.len())?;
    expect_end(r)?;
    TFGrid4D::new(xspec, xispec, params, kind, values)
}

pub fn save_signal(path: &Path, f: &QSignal2D) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_signal(&mut w, f)?;
    w.flush()?;
    Ok(())
}

pub fn load_signal(path: &Path) -> Result<QSignal2D> {
    read_signal(&mut BufReader::new(File::open(path)?))
}

pub fn save_transform(path: &Path, q: &QQPFTResult) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_transform(&mut w, q)?;
    w.flush()?;
    Ok(())
}

pub fn load_transform(path: &Path) -> Result<QQPFTResult> {
    read_transform(&mut BufReader::new(File::open(path)?))
}

pub fn save_field<F: TfField + ?Sized>(path: &Path, field: &F) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_field(&mut w, field)?;
    w.flush()?;
    Ok(())
}

pub fn load_field(path: &Path) -> Result<TFGrid4D> {
    read_field(&mut BufReader::new(File::open(path)?))
}

/// One row per sample: `t1,t2,r0,r1,r2,r3`.
pub fn write_signal_csv<W: Write>(w: &mut W, f: &QSignal2D) -> Result<()> {
    writeln!(w, "t1,t2,r0,r1,r2,r3")?;
    let coords = f.spec().coords();
    let n = f.n();
    for (idx, q) in f.samples().iter().enumerate() {
        writeln!(
            w,
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
            coords[idx / n],
            coords[idx % n],
            q.r0,
            q.r1,
            q.r2,
            q.r3
        )?;
    }
    Ok(())
}

/// One row per frequency pair of a single slice: `xi1,xi2,abs,r0,r1,r2,r3`.
pub fn write_slice_csv<W: Write>(w: &mut W, freq: &FreqGridSpec, values: &[Quaternion]) -> Result<()> {
    if values.len() != freq.len() {
        return Err(Error::InvalidGrid(format!("slice has {} values, grid {}", values.len(), freq.len())));
    }
    writeln!(w, "xi1,xi2,abs,r0,r1,r2,r3")?;
    let n = freq.n();
    for (idx, q) in values.iter().enumerate() {
        writeln!(
            w,
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
            freq.xi1()[idx / n],
            freq.xi2()[idx % n],
            q.modulus(),
            q.r0,
            q.r1,
            q.r2,
            q.r3
        )?;
    }
    Ok(())
}

/// One report per line in the `Display` form of [`VerificationReport`].
pub fn write_reports<W: Write>(w: &mut W, reports: &[VerificationReport]) -> Result<()> {
    for r in reports {
        writeln!(w, "{r}")?;
    }
    Ok(())
}

/// Parses a line written by [`write_reports`]. The slack is not part of the line and reads as zero.
pub fn parse_report_line(line: &str) -> Result<VerificationReport> {
    let cols: Vec<&str> = line.trim_end_matches('\n').split('\t').collect();
    if cols.len() != 8 {
        return Err(Error::Format(format!("expected 8 tab-separated columns, got {}", cols.len())));
    }
    let num = |s: &str| s.parse::<f64>().map_err(|_| Error::Format(format!("not a number: {s:?}")));
    let passed = match cols[4] {
        "pass" => true,
        "fail" => false,
        other => return Err(Error::Format(format!("bad status {other:?}"))),
    };
    let seed = match cols[5] {
        "-" => None,
        s => Some(s.parse().map_err(|_| Error::Format(format!("bad seed {s:?}")))?),
    };
    Ok(VerificationReport {
        inequality_id: cols[0].to_string(),
        lhs: num(cols[1])?,
        rhs: num(cols[2])?,
        margin: num(cols[3])?,
        slack: 0.0,
        passed,
        inputs_digest: cols[7].to_string(),
        params: cols[6].parse()?,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::Relation;
    use crate::params::ParamSet;
    use crate::signals::quaternion_random;
    use crate::time_frequency::TfPlan;
    use crate::transforms::qqpft_fast;

    fn pair() -> ParamPair {
        ParamPair::new(
            ParamSet::new(0.1, -1.5, 0.2, 0.3, -0.4).unwrap(),
            ParamSet::new(0.25, 0.75, -0.1, 0.0, 0.5).unwrap(),
        )
    }

    #[test]
    fn signal_round_trip_is_byte_identical() {
        let f = quaternion_random(GridSpec::new(8, 3.0).unwrap(), 1).unwrap();
        let mut bytes = Vec::new();
        write_signal(&mut bytes, &f).unwrap();
        assert_eq!(bytes.len(), 8 + 4 + 8 + 64 * 32);
        assert_eq!(&bytes[..8], b"QSIG1\0\0\0");
        let back = read_signal(&mut bytes.as_slice()).unwrap();
        assert_eq!(back, f);
        let mut again = Vec::new();
        write_signal(&mut again, &back).unwrap();
        assert_eq!(again, bytes);
    }

    #[test]
    fn transform_round_trip() {
        let f = quaternion_random(GridSpec::new(8, 3.0).unwrap(), 2).unwrap();
        let q = qqpft_fast(&f, &pair()).unwrap();
        let mut bytes = Vec::new();
        write_transform(&mut bytes, &q).unwrap();
        let back = read_transform(&mut bytes.as_slice()).unwrap();
        assert_eq!(back, q);
        let mut again = Vec::new();
        write_transform(&mut again, &back).unwrap();
        assert_eq!(again, bytes);
    }

    #[test]
    fn field_round_trip() {
        let spec = GridSpec::new(8, 3.0).unwrap();
        let f = quaternion_random(spec, 3).unwrap();
        let g = quaternion_random(spec, 4).unwrap();
        let plan = TfPlan::auto(TfKind::Qqpaf, &f, &g, &pair()).unwrap();
        let mut bytes = Vec::new();
        write_field(&mut bytes, &plan).unwrap();
        assert_eq!(bytes.len() as u64, field_file_size(4, 8));
        let back = read_field(&mut bytes.as_slice()).unwrap();
        assert_eq!(back, TFGrid4D::collect(&plan));
        let mut again = Vec::new();
        write_field(&mut again, &back).unwrap();
        assert_eq!(again, bytes);
    }

    #[test]
    fn rejects_bad_containers() {
        let f = quaternion_random(GridSpec::new(4, 3.0).unwrap(), 5).unwrap();
        let mut bytes = Vec::new();
        write_signal(&mut bytes, &f).unwrap();
        assert!(matches!(read_transform(&mut bytes.as_slice()), Err(Error::Format(_))));
        let short = &bytes[..bytes.len() - 3];
        assert!(matches!(read_signal(&mut &short[..]), Err(Error::Format(_))));
        let mut long = bytes.clone();
        long.push(0);
        assert!(read_signal(&mut long.as_slice()).is_err());
        assert_eq!(detect_kind(b"QTF41\0\0\0").unwrap(), FileKind::Field);
        assert!(detect_kind(b"NOPE\0\0\0\0").is_err());
    }

    #[test]
    fn csv_layouts() {
        let f = quaternion_random(GridSpec::new(4, 2.0).unwrap(), 6).unwrap();
        let mut out = Vec::new();
        write_signal_csv(&mut out, &f).unwrap();
        let text = String::from_utf8(out).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "t1,t2,r0,r1,r2,r3");
        assert_eq!(lines.len(), 17);
        let first: Vec<f64> = lines[1].split(',').map(|v| v.parse().unwrap()).collect();
        assert_eq!(first[..2], [-1.0, -1.0]);
        assert_eq!(first[2..], f.get(0, 0).to_array());

        let q = qqpft_fast(&f, &pair()).unwrap();
        let mut out = Vec::new();
        write_slice_csv(&mut out, q.freq(), q.values()).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert!(text.starts_with("xi1,xi2,abs,r0,r1,r2,r3\n"));
        assert_eq!(text.lines().count(), 17);
    }

    #[test]
    fn report_lines_round_trip() {
        let r = VerificationReport::new("lieb(q=3)", Relation::AtMost, 0.1, 0.3, 1e-3, pair(), "abcd".into())
            .with_seed(42);
        let line = r.to_string();
        let back = parse_report_line(&line).unwrap();
        assert_eq!(back.to_string(), line);
        assert_eq!(back.lhs, 0.1);
        assert_eq!(back.seed, Some(42));
        assert!(parse_report_line("a\tb").is_err());
    }
}
