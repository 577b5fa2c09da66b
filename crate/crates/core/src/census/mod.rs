//! Census records and the line-oriented census file format.
//!
//! A census file starts with `dim=<d> n=<n> count=<k>`, followed by one
//! complex per line: facets separated by `;`, the vertices of a facet by
//! spaces, optionally followed by tab-separated annotations
//! `fvec=.. type=.. |G|=.. transitive=0/1 shellable=0/1 vd=0/1`.

use std::io::{BufRead, Write};

use crate::canon::CanonicalForm;
use crate::complex::{Complex, FVector, VertexSet};
use crate::error::{Error, Result};
use crate::topo::TopoType;

mod store;

pub use store::{DedupeStore, MEMORY_CEILING_ENV};

/// One isomorphism class together with whatever has been computed about it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusRecord {
    pub form: CanonicalForm,
    pub f_vector: FVector,
    pub topo_type: Option<TopoType>,
    pub group_order: Option<usize>,
    pub transitive: Option<bool>,
    pub shellable: Option<bool>,
    pub vd: Option<bool>,
}

impl CensusRecord {
    pub fn new(form: CanonicalForm) -> Self {
        let f_vector = form.to_complex().f_vector();
        CensusRecord { form, f_vector, topo_type: None, group_order: None, transitive: None, shellable: None, vd: None }
    }

    pub fn complex(&self) -> Complex {
        self.form.to_complex()
    }

    pub fn to_line(&self) -> String {
        let mut s = self.form.to_string();
        s.push_str(&format!("\tfvec={}", self.f_vector.as_slice().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")));
        if let Some(t) = self.topo_type {
            s.push_str(&format!("\ttype={t}"));
        }
        if let Some(g) = self.group_order {
            s.push_str(&format!("\t|G|={g}"));
        }
        let flag = |b: bool| if b { 1 } else { 0 };
        if let Some(t) = self.transitive {
            s.push_str(&format!("\ttransitive={}", flag(t)));
        }
        if let Some(b) = self.shellable {
            s.push_str(&format!("\tshellable={}", flag(b)));
        }
        if let Some(b) = self.vd {
            s.push_str(&format!("\tvd={}", flag(b)));
        }
        s
    }

    /// Parses one record line. The facet list must already be canonical.
    pub fn parse_line(line: &str, dim: usize, lineno: usize) -> Result<Self> {
        let err = |msg: String| Error::Parse { line: lineno, msg };
        let mut fields = line.split('\t');
        let form = parse_form(fields.next().unwrap_or(""), dim).map_err(|e| err(e.to_string()))?;
        let mut rec = CensusRecord::new(form);
        for field in fields {
            let (key, value) = field.split_once('=').ok_or_else(|| err(format!("bad field {field:?}")))?;
            let flag = |v: &str| match v {
                "0" => Ok(false),
                "1" => Ok(true),
                _ => Err(err(format!("bad flag {v:?}"))),
            };
            match key {
                "fvec" => {
                    let fv: std::result::Result<Vec<usize>, _> = value.split(',').map(str::parse).collect();
                    let fv = FVector::new(fv.map_err(|_| err(format!("bad f-vector {value:?}")))?);
                    if fv != rec.f_vector {
                        return Err(err(format!("f-vector {fv} does not match the facets")));
                    }
                }
                "type" => rec.topo_type = Some(value.parse().map_err(|_| err(format!("bad type {value:?}")))?),
                "|G|" => rec.group_order = Some(value.parse().map_err(|_| err(format!("bad order {value:?}")))?),
                "transitive" => rec.transitive = Some(flag(value)?),
                "shellable" => rec.shellable = Some(flag(value)?),
                "vd" => rec.vd = Some(flag(value)?),
                _ => return Err(err(format!("unknown field {key:?}"))),
            }
        }
        Ok(rec)
    }
}

/// Facet list `1 2 3 4;1 2 3 5;...` of a complex already in canonical form.
pub fn parse_form(s: &str, dim: usize) -> Result<CanonicalForm> {
    let k = parse_complex(s, dim)?;
    if !k.is_contiguous() {
        return Err(Error::InvalidComplex("labels are not 1..n".into()));
    }
    Ok(CanonicalForm::from_canonical_complex(&k))
}

/// Facet list in the census syntax, any labels in 1..=16.
pub fn parse_complex(s: &str, dim: usize) -> Result<Complex> {
    let mut facets = Vec::new();
    for part in s.split(';') {
        let labels: std::result::Result<Vec<u8>, _> = part.split_whitespace().map(str::parse::<u8>).collect();
        let labels = labels.map_err(|_| Error::InvalidComplex(format!("bad facet {part:?}")))?;
        if labels.iter().any(|&v| v == 0 || v as usize > crate::complex::MAX_VERTICES) {
            return Err(Error::InvalidComplex(format!("label out of range in {part:?}")));
        }
        let f = VertexSet::from_labels(&labels);
        if f.len() != labels.len() {
            return Err(Error::InvalidComplex(format!("repeated label in {part:?}")));
        }
        facets.push(f);
    }
    Complex::new(dim, facets)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Header {
    pub dim: usize,
    pub n: usize,
    pub count: usize,
}

impl Header {
    pub fn parse(line: &str) -> Result<Self> {
        let err = || Error::Parse { line: 1, msg: format!("bad header {line:?}") };
        let mut vals = [None; 3];
        for field in line.split_whitespace() {
            let (k, v) = field.split_once('=').ok_or_else(err)?;
            let i = ["dim", "n", "count"].iter().position(|&x| x == k).ok_or_else(err)?;
            vals[i] = Some(v.parse::<usize>().map_err(|_| err())?);
        }
        match vals {
            [Some(dim), Some(n), Some(count)] => Ok(Header { dim, n, count }),
            _ => Err(err()),
        }
    }
}

impl std::fmt::Display for Header {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "dim={} n={} count={}", self.dim, self.n, self.count)
    }
}

pub fn write_census<W: Write>(mut w: W, dim: usize, n: usize, records: &[CensusRecord]) -> Result<()> {
    writeln!(w, "{}", Header { dim, n, count: records.len() })?;
    for r in records {
        writeln!(w, "{}", r.to_line())?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a census file, checking the header count.
pub fn read_census<R: BufRead>(r: R) -> Result<(Header, Vec<CensusRecord>)> {
    let mut lines = r.lines();
    let first = lines.next().ok_or(Error::Parse { line: 1, msg: "empty file".into() })??;
    let header = Header::parse(&first)?;
    let mut records = Vec::with_capacity(header.count);
    for (i, line) in lines.enumerate() {
        let line = line?;
        if line.is_empty() {
            continue;
        }
        records.push(CensusRecord::parse_line(&line, header.dim, i + 2)?);
    }
    if records.len() != header.count {
        return Err(Error::Parse {
            line: records.len() + 1,
            msg: format!("header announces {} records, found {}", header.count, records.len()),
        });
    }
    Ok((header, records))
}

/// Per-f-vector counts, split by type.
pub fn fvector_histogram(records: &[CensusRecord]) -> std::collections::BTreeMap<FVector, [usize; 4]> {
    let mut out = std::collections::BTreeMap::new();
    for r in records {
        let row: &mut [usize; 4] = out.entry(r.f_vector.clone()).or_default();
        let t = r.topo_type.unwrap_or(TopoType::Other);
        row[TopoType::ALL.iter().position(|&x| x == t).unwrap()] += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonical_form;
    use proptest::prelude::*;

    #[test]
    fn line_round_trip() {
        let mut r = CensusRecord::new(canonical_form(&Complex::simplex_boundary(3)));
        r.topo_type = Some(TopoType::S3);
        r.group_order = Some(120);
        r.transitive = Some(true);
        let line = r.to_line();
        assert_eq!(line, "1 2 3 4;1 2 3 5;1 2 4 5;1 3 4 5;2 3 4 5\tfvec=5,10,10,5\ttype=S3\t|G|=120\ttransitive=1");
        assert_eq!(CensusRecord::parse_line(&line, 3, 2).unwrap(), r);
    }

    #[test]
    fn malformed_lines() {
        for bad in ["1 2 3 4;1 2 3", "1 2 3 4;1 2 3 x", "1 2 3 4\tfvec=1,1,1,1", "1 2 3 4\tcolour=red", "1 1 2 3"] {
            assert!(CensusRecord::parse_line(bad, 3, 7).is_err(), "{bad}");
        }
        assert!(Header::parse("dim=3 n=5").is_err());
        let text = "dim=3 n=5 count=2\n1 2 3 4;1 2 3 5;1 2 4 5;1 3 4 5;2 3 4 5\n";
        assert!(read_census(text.as_bytes()).is_err());
    }

    fn small_complex() -> impl Strategy<Value = Complex> {
        prop::collection::btree_set(prop::sample::subsequence((1u8..=8).collect::<Vec<_>>(), 4), 1..12)
            .prop_map(|fs| Complex::new(3, fs.into_iter().map(|f| VertexSet::from_labels(&f))).unwrap())
    }

    proptest! {
        #[test]
        fn census_file_round_trip(ks in prop::collection::vec(small_complex(), 0..6), flags in any::<[bool; 3]>()) {
            let records: Vec<CensusRecord> = ks.iter().map(|k| {
                let mut r = CensusRecord::new(canonical_form(k));
                r.shellable = Some(flags[0]);
                r.vd = flags[1].then_some(flags[2]);
                r
            }).collect();
            let mut buf = Vec::new();
            write_census(&mut buf, 3, 0, &records).unwrap();
            let (h, back) = read_census(&buf[..]).unwrap();
            prop_assert_eq!(h.count, records.len());
            prop_assert_eq!(back, records);
        }
    }
}
