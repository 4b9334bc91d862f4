//! Corpus ingestion, validation, and per-sub-domain statistics.
//!
//! A corpus is a JSONL file, one document per line:
//!
//! ```json
//! {"id":"y-001","field":"İÇTİHAT","content":"Yargıtay","topic":null,"text":"..."}
//! ```
//!
//! Taxonomy values (`field`, `content`, `topic`) are opaque case-sensitive
//! strings; new sub-domains need no code change. Byte sizes are measured
//! on the UTF-8 `text` field only, excluding metadata.

use std::collections::{BTreeMap, HashSet};
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One legal text with its three-level sub-domain taxonomy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub id: String,
    pub field: String,
    pub content: String,
    #[serde(default)]
    pub topic: Option<String>,
    pub text: String,
}

impl Document {
    /// Checks the document invariants: non-empty id and non-blank text.
    pub fn validate(&self) -> Result<()> {
        if self.id.is_empty() {
            return Err(Error::InvalidDocument {
                id: String::from("<empty>"),
                message: "id is empty".into(),
            });
        }
        if self.text.trim().is_empty() {
            return Err(Error::InvalidDocument {
                id: self.id.clone(),
                message: "text is empty after trimming".into(),
            });
        }
        Ok(())
    }

    /// Size of the text body in UTF-8 bytes.
    pub fn byte_size(&self) -> u64 {
        self.text.len() as u64
    }

    pub fn group_key(&self) -> GroupKey {
        GroupKey {
            field: self.field.clone(),
            content: self.content.clone(),
            topic: self.topic.clone(),
        }
    }
}

/// A (field, content, topic) taxonomy cell.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupKey {
    pub field: String,
    pub content: String,
    pub topic: Option<String>,
}

impl GroupKey {
    /// Renders the slash-joined key used in stats reports and balance
    /// target files: `field/content` or `field/content/topic`.
    pub fn render(&self) -> String {
        match &self.topic {
            Some(t) => format!("{}/{}/{}", self.field, self.content, t),
            None => format!("{}/{}", self.field, self.content),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupStats {
    pub doc_count: u64,
    pub byte_size: u64,
}

/// Grouped document counts and text byte sizes, plus totals.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CorpusStats {
    groups: BTreeMap<GroupKey, GroupStats>,
}

impl CorpusStats {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, doc: &Document) {
        let entry = self.groups.entry(doc.group_key()).or_default();
        entry.doc_count += 1;
        entry.byte_size += doc.byte_size();
    }

    /// Merges a shard into this one. Folding shards in any order yields
    /// the same result, so stats aggregation can be parallelized freely.
    pub fn merge(&mut self, other: &CorpusStats) {
        for (key, stats) in &other.groups {
            let entry = self.groups.entry(key.clone()).or_default();
            entry.doc_count += stats.doc_count;
            entry.byte_size += stats.byte_size;
        }
    }

    pub fn groups(&self) -> &BTreeMap<GroupKey, GroupStats> {
        &self.groups
    }

    pub fn group(&self, key: &GroupKey) -> Option<GroupStats> {
        self.groups.get(key).copied()
    }

    /// Looks a group up by its rendered `field/content[/topic]` key.
    pub fn group_by_rendered(&self, rendered: &str) -> Option<(&GroupKey, GroupStats)> {
        self.groups
            .iter()
            .find(|(k, _)| k.render() == rendered)
            .map(|(k, s)| (k, *s))
    }

    pub fn total_docs(&self) -> u64 {
        self.groups.values().map(|g| g.doc_count).sum()
    }

    pub fn total_bytes(&self) -> u64 {
        self.groups.values().map(|g| g.byte_size).sum()
    }

    /// JSON report keyed by rendered group keys plus a `TOTAL` entry.
    pub fn to_report(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        map.insert(
            "schema_version".into(),
            serde_json::Value::String(crate::SCHEMA_VERSION.into()),
        );
        for (key, stats) in &self.groups {
            map.insert(
                key.render(),
                serde_json::json!({
                    "doc_count": stats.doc_count,
                    "byte_size": stats.byte_size,
                }),
            );
        }
        map.insert(
            "TOTAL".into(),
            serde_json::json!({
                "doc_count": self.total_docs(),
                "byte_size": self.total_bytes(),
            }),
        );
        serde_json::Value::Object(map)
    }
}

/// Computes grouped stats over a finished document collection.
pub fn corpus_stats<'a>(docs: impl IntoIterator<Item = &'a Document>) -> CorpusStats {
    let mut stats = CorpusStats::new();
    for doc in docs {
        stats.add(doc);
    }
    stats
}

/// Streaming JSONL reader. Yields documents in file order.
///
/// In strict mode any malformed record aborts the stream; in lenient mode
/// malformed records are counted and skipped. Duplicate ids are a hard
/// error in both modes — downstream dedup reports are keyed by id.
pub struct CorpusReader {
    lines: std::io::Lines<BufReader<File>>,
    path: String,
    strict: bool,
    line_no: usize,
    skipped: usize,
    seen_ids: HashSet<String>,
}

impl CorpusReader {
    pub fn open(path: impl AsRef<Path>, strict: bool) -> Result<Self> {
        let file = File::open(path.as_ref())?;
        Ok(Self {
            lines: BufReader::new(file).lines(),
            path: path.as_ref().display().to_string(),
            strict,
            line_no: 0,
            skipped: 0,
            seen_ids: HashSet::new(),
        })
    }

    /// Number of malformed records skipped so far (lenient mode only).
    pub fn skipped(&self) -> usize {
        self.skipped
    }

    fn parse_line(&mut self, line: &str) -> Result<Document> {
        let doc: Document =
            serde_json::from_str(line).map_err(|e| Error::MalformedRecord {
                path: self.path.clone(),
                line: self.line_no,
                message: e.to_string(),
            })?;
        doc.validate().map_err(|e| Error::MalformedRecord {
            path: self.path.clone(),
            line: self.line_no,
            message: e.to_string(),
        })?;
        Ok(doc)
    }
}

impl Iterator for CorpusReader {
    type Item = Result<Document>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            let line = match self.lines.next()? {
                Ok(l) => l,
                Err(e) => return Some(Err(e.into())),
            };
            self.line_no += 1;
            if line.trim().is_empty() {
                continue;
            }
            match self.parse_line(&line) {
                Ok(doc) => {
                    if !self.seen_ids.insert(doc.id.clone()) {
                        return Some(Err(Error::DuplicateId { id: doc.id }));
                    }
                    return Some(Ok(doc));
                }
                Err(e) => {
                    if self.strict {
                        return Some(Err(e));
                    }
                    self.skipped += 1;
                }
            }
        }
    }
}

/// Loads a whole corpus into memory. Returns the documents plus the
/// lenient-mode skip count.
pub fn load_corpus(path: impl AsRef<Path>, strict: bool) -> Result<(Vec<Document>, usize)> {
    let mut reader = CorpusReader::open(path, strict)?;
    let mut docs = Vec::new();
    for doc in &mut reader {
        docs.push(doc?);
    }
    let skipped = reader.skipped();
    Ok((docs, skipped))
}

/// Writes documents as JSONL with LF line endings.
pub fn write_corpus<'a>(
    path: impl AsRef<Path>,
    docs: impl IntoIterator<Item = &'a Document>,
) -> Result<()> {
    let file = File::create(path)?;
    let mut out = BufWriter::new(file);
    for doc in docs {
        serde_json::to_writer(&mut out, doc)?;
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write as _;

    fn doc(id: &str, field: &str, content: &str, topic: Option<&str>, text: &str) -> Document {
        Document {
            id: id.into(),
            field: field.into(),
            content: content.into(),
            topic: topic.map(String::from),
            text: text.into(),
        }
    }

    fn write_lines(lines: &[&str]) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        for line in lines {
            writeln!(f, "{line}").unwrap();
        }
        f.flush().unwrap();
        f
    }

    #[test]
    fn loads_well_formed_file_in_order() {
        let f = write_lines(&[
            r#"{"id":"a","field":"MEVZUAT","content":"Mevzuat","topic":null,"text":"kanun metni"}"#,
            r#"{"id":"b","field":"İÇTİHAT","content":"Yargıtay","topic":"KARAR","text":"karar metni"}"#,
            r#"{"id":"c","field":"HUKUK","content":"TBB","topic":null,"text":"makale"}"#,
        ]);
        let (docs, skipped) = load_corpus(f.path(), true).unwrap();
        assert_eq!(skipped, 0);
        assert_eq!(
            docs.iter().map(|d| d.id.as_str()).collect::<Vec<_>>(),
            ["a", "b", "c"]
        );
        assert_eq!(docs[1].topic.as_deref(), Some("KARAR"));
    }

    #[test]
    fn lenient_mode_skips_and_counts_malformed() {
        let f = write_lines(&[
            r#"{"id":"a","field":"F","content":"C","topic":null}"#, // missing text
        ]);
        let (docs, skipped) = load_corpus(f.path(), false).unwrap();
        assert!(docs.is_empty());
        assert_eq!(skipped, 1);
    }

    #[test]
    fn strict_mode_aborts_on_malformed() {
        let f = write_lines(&[
            r#"{"id":"a","field":"F","content":"C","topic":null,"text":"ok"}"#,
            r#"not json"#,
        ]);
        let err = load_corpus(f.path(), true).unwrap_err();
        assert!(matches!(err, Error::MalformedRecord { line: 2, .. }));
    }

    #[test]
    fn blank_text_is_malformed() {
        let f = write_lines(&[
            r#"{"id":"a","field":"F","content":"C","topic":null,"text":"   \t "}"#,
        ]);
        let (docs, skipped) = load_corpus(f.path(), false).unwrap();
        assert!(docs.is_empty());
        assert_eq!(skipped, 1);
    }

    #[test]
    fn duplicate_id_is_hard_error_even_lenient() {
        let f = write_lines(&[
            r#"{"id":"a","field":"F","content":"C","topic":null,"text":"x"}"#,
            r#"{"id":"a","field":"F","content":"C","topic":null,"text":"y"}"#,
        ]);
        let mut reader = CorpusReader::open(f.path(), false).unwrap();
        assert!(reader.next().unwrap().is_ok());
        let err = reader.next().unwrap().unwrap_err();
        assert!(matches!(err, Error::DuplicateId { .. }));
    }

    #[test]
    fn missing_file_errors() {
        assert!(load_corpus("/nonexistent/corpus.jsonl", true).is_err());
    }

    #[test]
    fn stats_zero_case() {
        let stats = corpus_stats([]);
        assert_eq!(stats.total_docs(), 0);
        assert_eq!(stats.total_bytes(), 0);
        assert!(stats.groups().is_empty());
    }

    #[test]
    fn stats_additivity_within_group() {
        let docs = vec![
            doc("a", "F", "C", None, "0123456789"),          // 10 bytes
            doc("b", "F", "C", None, "01234567890123456789"), // 20 bytes
        ];
        let stats = corpus_stats(&docs);
        let g = stats
            .group(&GroupKey {
                field: "F".into(),
                content: "C".into(),
                topic: None,
            })
            .unwrap();
        assert_eq!(g.doc_count, 2);
        assert_eq!(g.byte_size, 30);
        assert_eq!(stats.total_bytes(), 30);
    }

    // Oracle: a flat one-pass counter kept separate from CorpusStats.
    fn brute_force_stats(docs: &[Document]) -> (u64, u64, BTreeMap<String, (u64, u64)>) {
        let mut per_group: BTreeMap<String, (u64, u64)> = BTreeMap::new();
        let mut total_docs = 0u64;
        let mut total_bytes = 0u64;
        for d in docs {
            let key = match &d.topic {
                Some(t) => format!("{}/{}/{}", d.field, d.content, t),
                None => format!("{}/{}", d.field, d.content),
            };
            let e = per_group.entry(key).or_insert((0, 0));
            e.0 += 1;
            e.1 += d.text.len() as u64;
            total_docs += 1;
            total_bytes += d.text.len() as u64;
        }
        (total_docs, total_bytes, per_group)
    }

    #[test]
    fn stats_match_brute_force_recount_on_synthetic_corpus() {
        // 100 docs spread over a taxonomy shaped like the raw-corpus table.
        let fields = [
            ("MEVZUAT", "Mevzuat", None),
            ("İÇTİHAT", "Yargıtay", None),
            ("İÇTİHAT", "Danıştay", None),
            ("HUKUK", "TBB", Some("MAKALE")),
            ("HUKUK DIŞI", "Vikipedi", None),
        ];
        let docs: Vec<Document> = (0..100)
            .map(|i| {
                let (f, c, t) = fields[i % fields.len()];
                doc(
                    &format!("d{i:03}"),
                    f,
                    c,
                    t,
                    &"karar ".repeat(1 + i % 7),
                )
            })
            .collect();
        let stats = corpus_stats(&docs);
        let (td, tb, groups) = brute_force_stats(&docs);
        assert_eq!(stats.total_docs(), td);
        assert_eq!(stats.total_bytes(), tb);
        for (key, g) in stats.groups() {
            let (dc, bs) = groups[&key.render()];
            assert_eq!(g.doc_count, dc);
            assert_eq!(g.byte_size, bs);
        }
        assert_eq!(stats.groups().len(), groups.len());
    }

    #[test]
    fn stats_report_groups_match_hand_count_on_table_like_fixture() {
        // 10 records mirroring raw-distribution rows: 4 Yargıtay, 3 Mevzuat,
        // 2 Danıştay, 1 TBB. Hand-counted group sizes below.
        let mut docs = Vec::new();
        for i in 0..4 {
            docs.push(doc(&format!("y{i}"), "İÇTİHAT", "Yargıtay", None, "aaaa"));
        }
        for i in 0..3 {
            docs.push(doc(&format!("m{i}"), "MEVZUAT", "Mevzuat", None, "bb"));
        }
        for i in 0..2 {
            docs.push(doc(&format!("d{i}"), "İÇTİHAT", "Danıştay", None, "c"));
        }
        docs.push(doc("t0", "HUKUK", "TBB", None, "dddddddd"));

        let stats = corpus_stats(&docs);
        let report = stats.to_report();
        assert_eq!(report["İÇTİHAT/Yargıtay"]["doc_count"], 4);
        assert_eq!(report["İÇTİHAT/Yargıtay"]["byte_size"], 16);
        assert_eq!(report["MEVZUAT/Mevzuat"]["doc_count"], 3);
        assert_eq!(report["MEVZUAT/Mevzuat"]["byte_size"], 6);
        assert_eq!(report["İÇTİHAT/Danıştay"]["doc_count"], 2);
        assert_eq!(report["İÇTİHAT/Danıştay"]["byte_size"], 2);
        assert_eq!(report["HUKUK/TBB"]["doc_count"], 1);
        assert_eq!(report["HUKUK/TBB"]["byte_size"], 8);
        assert_eq!(report["TOTAL"]["doc_count"], 10);
        assert_eq!(report["TOTAL"]["byte_size"], 32);
    }

    #[test]
    fn stats_invariant_under_reordering() {
        let mut docs = vec![
            doc("a", "F", "C", None, "xx"),
            doc("b", "G", "D", Some("T"), "yyy"),
            doc("c", "F", "C", None, "z"),
        ];
        let forward = corpus_stats(&docs);
        docs.reverse();
        let backward = corpus_stats(&docs);
        assert_eq!(forward, backward);
    }

    #[test]
    fn merge_is_order_independent() {
        let a = corpus_stats(&[doc("a", "F", "C", None, "xx")]);
        let b = corpus_stats(&[doc("b", "F", "C", None, "yyy"), doc("c", "G", "D", None, "z")]);
        let mut ab = a.clone();
        ab.merge(&b);
        let mut ba = b.clone();
        ba.merge(&a);
        assert_eq!(ab, ba);
        assert_eq!(ab.total_docs(), 3);
    }

    #[test]
    fn corpus_round_trips_through_jsonl() {
        let docs = vec![
            doc("a", "İÇTİHAT", "Yargıtay", Some("KARAR"), "Gereği düşünüldü"),
            doc("b", "HUKUK", "Sözlük", None, "tereke: mirasbırakanın malvarlığı"),
        ];
        let f = tempfile::NamedTempFile::new().unwrap();
        write_corpus(f.path(), &docs).unwrap();
        let (loaded, skipped) = load_corpus(f.path(), true).unwrap();
        assert_eq!(skipped, 0);
        assert_eq!(loaded, docs);
    }
}
