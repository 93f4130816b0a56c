//! Code-set files.
//!
//! The text form is a `key = value` header followed by the arrays, one row of
//! integers per line:
//!
//! ```text
//! zcacs-codeset 1
//! kind = ZCACS-2D
//! sets = 36
//! flock = 6
//! rows = 12
//! cols = 18
//! z1 = 4
//! z2 = 9
//! modulus = 6
//! config = {"row_blocks":[[2,2,1]],...}
//! set 0
//! array 0
//! 0 3 1 ...
//! ...
//! end
//! ```
//!
//! The binary form starts with [`BINARY_MAGIC`], a little-endian header and the
//! config JSON, then stores every entry row-major in the narrowest unsigned
//! width (1, 2 or 4 bytes) that holds `modulus - 1`.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::Path;

use thiserror::Error;

use super::doc::ConfigDocument;
use crate::codeset::{CodeKind, CodeSet, CodeSetParams, PhaseArray};

pub const TEXT_MAGIC: &str = "zcacs-codeset";
pub const BINARY_MAGIC: &[u8; 8] = b"ZCACSBIN";
pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum FileError {
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{path}: corrupt code-set file: {message}")]
    Corrupt { path: String, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Encoding {
    #[default]
    Text,
    Binary,
}

fn io_err(path: &Path, source: io::Error) -> FileError {
    FileError::Io {
        path: path.display().to_string(),
        source,
    }
}

fn corrupt(path: &Path, message: impl Into<String>) -> FileError {
    FileError::Corrupt {
        path: path.display().to_string(),
        message: message.into(),
    }
}

fn provenance_json(cs: &CodeSet) -> Option<String> {
    cs.provenance()
        .map(|cfg| ConfigDocument::from_config(cfg).to_json_string())
}

pub fn to_text(cs: &CodeSet) -> String {
    let m = cs.meta();
    let mut out = String::new();
    writeln!(out, "{TEXT_MAGIC} {FORMAT_VERSION}").unwrap();
    writeln!(out, "kind = {}", m.kind).unwrap();
    for (key, value) in [
        ("sets", m.sets),
        ("flock", m.flock),
        ("rows", m.rows),
        ("cols", m.cols),
        ("z1", m.z1),
        ("z2", m.z2),
        ("modulus", m.modulus as usize),
    ] {
        writeln!(out, "{key} = {value}").unwrap();
    }
    writeln!(out, "config = {}", provenance_json(cs).as_deref().unwrap_or("none")).unwrap();
    for (k, set) in cs.family().iter().enumerate() {
        writeln!(out, "set {k}").unwrap();
        for (i, array) in set.iter().enumerate() {
            writeln!(out, "array {i}").unwrap();
            for g in 0..array.rows() {
                let row: Vec<String> = array.row(g).iter().map(u32::to_string).collect();
                out.push_str(&row.join(" "));
                out.push('\n');
            }
        }
    }
    out.push_str("end\n");
    out
}

fn entry_width(modulus: u32) -> u8 {
    match modulus - 1 {
        0..=0xff => 1,
        0x100..=0xffff => 2,
        _ => 4,
    }
}

fn kind_code(kind: CodeKind) -> u8 {
    match kind {
        CodeKind::Ccc => 0,
        CodeKind::Zcacs2d => 1,
        CodeKind::Zccs1d => 2,
    }
}

pub fn to_binary(cs: &CodeSet) -> Vec<u8> {
    let m = cs.meta();
    let width = entry_width(m.modulus);
    let json = provenance_json(cs).unwrap_or_default();
    let mut out = Vec::with_capacity(64 + json.len() + m.sets * m.flock * m.rows * m.cols * width as usize);
    out.extend_from_slice(BINARY_MAGIC);
    out.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
    out.push(kind_code(m.kind));
    out.push(width);
    for v in [m.sets, m.flock, m.rows, m.cols, m.z1, m.z2] {
        out.extend_from_slice(&(v as u32).to_le_bytes());
    }
    out.extend_from_slice(&m.modulus.to_le_bytes());
    out.extend_from_slice(&(json.len() as u32).to_le_bytes());
    out.extend_from_slice(json.as_bytes());
    for array in cs.family().iter().flatten() {
        for &e in array.entries() {
            out.extend_from_slice(&e.to_le_bytes()[..width as usize]);
        }
    }
    out
}

pub fn write_codeset(cs: &CodeSet, path: &Path, encoding: Encoding) -> Result<(), FileError> {
    let bytes = match encoding {
        Encoding::Text => to_text(cs).into_bytes(),
        Encoding::Binary => to_binary(cs),
    };
    fs::write(path, bytes).map_err(|e| io_err(path, e))
}

/// Reads either encoding, chosen by the leading magic bytes.
pub fn read_codeset(path: &Path) -> Result<CodeSet, FileError> {
    let bytes = fs::read(path).map_err(|e| io_err(path, e))?;
    if bytes.starts_with(BINARY_MAGIC) {
        from_binary(&bytes).map_err(|m| corrupt(path, m))
    } else {
        let text = std::str::from_utf8(&bytes).map_err(|_| corrupt(path, "not UTF-8 and no binary magic"))?;
        from_text(text).map_err(|m| corrupt(path, m))
    }
}

fn provenance(json: &str) -> Result<Option<crate::GeneratorConfig>, String> {
    if json.is_empty() || json == "none" {
        return Ok(None);
    }
    let doc = ConfigDocument::from_json_str(json).map_err(|e| e.to_string())?;
    doc.to_config().map(Some).map_err(|e| e.to_string())
}

fn assemble(meta: CodeSetParams, family: Vec<Vec<PhaseArray>>, json: &str) -> Result<CodeSet, String> {
    CodeSet::new(family, meta, provenance(json)?).map_err(|e| e.to_string())
}

fn checked_volume(meta: &CodeSetParams) -> Result<usize, String> {
    [meta.sets, meta.flock, meta.rows, meta.cols]
        .iter()
        .try_fold(1usize, |acc, &v| acc.checked_mul(v))
        .filter(|&v| v > 0)
        .ok_or_else(|| "header dimensions are zero or overflow".to_string())
}

pub fn from_text(text: &str) -> Result<CodeSet, String> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let mut next = |what: &str| lines.next().ok_or_else(|| format!("file ends while expecting {what}"));

    let (_, first) = next("the format line")?;
    let version = first
        .strip_prefix(TEXT_MAGIC)
        .map(str::trim)
        .ok_or_else(|| format!("missing `{TEXT_MAGIC}` format line"))?;
    if version != FORMAT_VERSION.to_string() {
        return Err(format!("unsupported format version `{version}`"));
    }

    let mut header = |key: &str| -> Result<String, String> {
        let (n, line) = next(key)?;
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| format!("line {n}: expected `{key} = ...`"))?;
        if k.trim() != key {
            return Err(format!("line {n}: expected `{key}`, found `{}`", k.trim()));
        }
        Ok(v.trim().to_string())
    };
    let kind: CodeKind = header("kind")?.parse().map_err(|e: crate::Error| e.to_string())?;
    let mut number = |key: &str| -> Result<usize, String> {
        let v = header(key)?;
        v.parse().map_err(|_| format!("`{key}` is not a number: `{v}`"))
    };
    let sets = number("sets")?;
    let flock = number("flock")?;
    let rows = number("rows")?;
    let cols = number("cols")?;
    let z1 = number("z1")?;
    let z2 = number("z2")?;
    let modulus = number("modulus")?;
    let json = header("config")?;
    let modulus = u32::try_from(modulus)
        .ok()
        .filter(|&m| m > 0)
        .ok_or("modulus must be in 1..2^32")?;
    let meta = CodeSetParams {
        kind,
        sets,
        flock,
        rows,
        cols,
        z1,
        z2,
        modulus,
    };
    checked_volume(&meta)?;

    let mut family = Vec::new();
    for k in 0..sets {
        let (n, line) = next("a set marker")?;
        if line != format!("set {k}") {
            return Err(format!("line {n}: expected `set {k}`"));
        }
        let mut set = Vec::new();
        for i in 0..flock {
            let (n, line) = next("an array marker")?;
            if line != format!("array {i}") {
                return Err(format!("line {n}: expected `array {i}`"));
            }
            let mut entries = Vec::new();
            for _ in 0..rows {
                let (n, line) = next("an array row")?;
                let before = entries.len();
                for tok in line.split_whitespace() {
                    let v: u32 = tok.parse().map_err(|_| format!("line {n}: bad entry `{tok}`"))?;
                    entries.push(v);
                }
                if entries.len() - before != cols {
                    return Err(format!(
                        "line {n}: expected {cols} entries, found {}",
                        entries.len() - before
                    ));
                }
            }
            set.push(PhaseArray::new(rows, cols, modulus, entries).map_err(|e| e.to_string())?);
        }
        family.push(set);
    }
    let (n, line) = next("the end marker")?;
    if line != "end" {
        return Err(format!("line {n}: expected `end`"));
    }
    if let Some((n, _)) = lines.find(|(_, l)| !l.is_empty()) {
        return Err(format!("line {n}: trailing content after `end`"));
    }
    assemble(meta, family, &json)
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, n: usize, what: &str) -> Result<&'a [u8], String> {
        let end = self.pos.checked_add(n).filter(|&e| e <= self.bytes.len());
        let end = end.ok_or_else(|| format!("truncated while reading {what} at byte {}", self.pos))?;
        let out = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(out)
    }

    fn u8(&mut self, what: &str) -> Result<u8, String> {
        Ok(self.take(1, what)?[0])
    }

    fn u32(&mut self, what: &str) -> Result<u32, String> {
        Ok(u32::from_le_bytes(self.take(4, what)?.try_into().unwrap()))
    }
}

pub fn from_binary(bytes: &[u8]) -> Result<CodeSet, String> {
    let mut cur = Cursor { bytes, pos: 0 };
    if cur.take(BINARY_MAGIC.len(), "the magic")? != BINARY_MAGIC {
        return Err("bad magic".into());
    }
    let version = cur.u32("the version")?;
    if version != FORMAT_VERSION {
        return Err(format!("unsupported format version {version}"));
    }
    let kind = match cur.u8("the kind")? {
        0 => CodeKind::Ccc,
        1 => CodeKind::Zcacs2d,
        2 => CodeKind::Zccs1d,
        k => return Err(format!("unknown kind code {k}")),
    };
    let width = cur.u8("the entry width")?;
    let mut dims = [0usize; 6];
    for (d, name) in dims.iter_mut().zip(["sets", "flock", "rows", "cols", "z1", "z2"]) {
        *d = cur.u32(name)? as usize;
    }
    let modulus = cur.u32("the modulus")?;
    if modulus == 0 {
        return Err("modulus is zero".into());
    }
    if width != entry_width(modulus) {
        return Err(format!("entry width {width} does not match modulus {modulus}"));
    }
    let [sets, flock, rows, cols, z1, z2] = dims;
    let meta = CodeSetParams {
        kind,
        sets,
        flock,
        rows,
        cols,
        z1,
        z2,
        modulus,
    };
    let volume = checked_volume(&meta)?;
    let json_len = cur.u32("the config length")? as usize;
    let json = std::str::from_utf8(cur.take(json_len, "the config")?).map_err(|_| "config is not UTF-8")?;
    let need = volume.checked_mul(width as usize).ok_or("entry block size overflows")?;
    let remaining = bytes.len() - cur.pos;
    if remaining != need {
        return Err(format!("expected {need} entry bytes, found {remaining}"));
    }
    let mut family = Vec::with_capacity(sets);
    for _ in 0..sets {
        let mut set = Vec::with_capacity(flock);
        for _ in 0..flock {
            let raw = cur.take(rows * cols * width as usize, "an array")?;
            let entries = raw
                .chunks_exact(width as usize)
                .map(|c| {
                    let mut b = [0u8; 4];
                    b[..c.len()].copy_from_slice(c);
                    u32::from_le_bytes(b)
                })
                .collect();
            set.push(PhaseArray::new(rows, cols, modulus, entries).map_err(|e| e.to_string())?);
        }
        family.push(set);
    }
    assemble(meta, family, json)
}
