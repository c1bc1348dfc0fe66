//! Burmeister `.cxt` and CSV readers and writers.

use std::collections::HashSet;

use super::{is_valid_name, BitSet, ContextError, EntityKind, FormalContext};

fn syntax(line: usize, reason: impl Into<String>) -> ContextError {
    ContextError::Syntax {
        line,
        reason: reason.into(),
    }
}

fn check_names<'a>(
    kind: EntityKind,
    first_line: usize,
    names: impl Iterator<Item = &'a str>,
) -> Result<Vec<String>, ContextError> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (i, n) in names.enumerate() {
        let line = first_line + i;
        if !is_valid_name(n) {
            return Err(ContextError::BadNameAt {
                line,
                kind,
                name: n.to_string(),
            });
        }
        if !seen.insert(n) {
            return Err(ContextError::DuplicateNameAt {
                line,
                kind,
                name: n.to_string(),
            });
        }
        out.push(n.to_string());
    }
    Ok(out)
}

impl FormalContext {
    /// Parses the Burmeister format:
    ///
    /// ```text
    /// B
    /// <name>
    /// <|G|>
    /// <|M|>
    /// <object names, one per line>
    /// <attribute names, one per line>
    /// <one row of X/. per object>
    /// ```
    pub fn parse_cxt(text: &str) -> Result<FormalContext, ContextError> {
        let lines: Vec<&str> = text.split('\n').map(|l| l.strip_suffix('\r').unwrap_or(l)).collect();
        let get = |i: usize| -> Result<&str, ContextError> {
            lines
                .get(i)
                .copied()
                .ok_or_else(|| syntax(i + 1, "unexpected end of file"))
        };
        if get(0)? != "B" {
            return Err(syntax(1, "header must be `B`"));
        }
        let name = get(1)?.to_string();
        let count = |i: usize| -> Result<usize, ContextError> {
            let raw = get(i)?;
            raw.trim()
                .parse::<usize>()
                .map_err(|_| syntax(i + 1, format!("expected a count, found {raw:?}")))
        };
        let n_obj = count(2)?;
        let n_attr = count(3)?;
        let obj_start = 4;
        let attr_start = obj_start + n_obj;
        let row_start = attr_start + n_attr;
        let end = row_start + n_obj;
        if lines.len() < end {
            let line = lines.len() + 1;
            let what = if lines.len() < attr_start {
                "object names"
            } else if lines.len() < row_start {
                "attribute names"
            } else {
                "incidence rows"
            };
            return Err(syntax(line, format!("unexpected end of file while reading {what}")));
        }
        // blank lines after the last row are tolerated
        if let Some(extra) = lines[end..].iter().position(|l| !l.is_empty()) {
            return Err(syntax(end + extra + 1, "trailing content after incidence rows"));
        }
        let objects = check_names(
            EntityKind::Object,
            obj_start + 1,
            lines[obj_start..attr_start].iter().copied(),
        )?;
        let attributes = check_names(
            EntityKind::Attribute,
            attr_start + 1,
            lines[attr_start..row_start].iter().copied(),
        )?;
        let mut rows = Vec::with_capacity(n_obj);
        for (i, raw) in lines[row_start..end].iter().enumerate() {
            let line = row_start + i + 1;
            let found = raw.chars().count();
            if found != n_attr {
                return Err(ContextError::RowLength {
                    line,
                    found,
                    expected: n_attr,
                });
            }
            let mut row = BitSet::empty(n_attr);
            for (j, c) in raw.chars().enumerate() {
                match c {
                    'X' => {
                        row.insert(j);
                    }
                    '.' => {}
                    other => {
                        return Err(ContextError::InvalidCell {
                            line,
                            column: j + 1,
                            token: other.to_string(),
                        })
                    }
                }
            }
            rows.push(row);
        }
        FormalContext::new(name, objects, attributes, rows)
    }

    /// Serializes to the Burmeister format, newline-terminated.
    pub fn write_cxt(&self) -> String {
        let mut out = String::new();
        out.push_str("B\n");
        out.push_str(&self.name);
        out.push('\n');
        out.push_str(&format!("{}\n{}\n", self.num_objects(), self.num_attributes()));
        for n in self.objects.iter().chain(&self.attributes) {
            out.push_str(n);
            out.push('\n');
        }
        for r in &self.rows {
            out.push_str(&r.to_cross_row());
            out.push('\n');
        }
        out
    }

    /// Parses a cross table in CSV form. The header row holds the context
    /// name in its first cell followed by the attribute names; every other
    /// row holds an object name followed by one cell per attribute. Cells
    /// are `1`/`X` (incident) or `0`/blank (not incident).
    pub fn parse_csv(text: &str) -> Result<FormalContext, ContextError> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .flexible(true)
            .from_reader(text.as_bytes());
        let mut records = reader.records();
        let header = match records.next() {
            None => return Ok(FormalContext::empty()),
            Some(r) => r.map_err(|e| csv_error(&e))?,
        };
        let name = header.get(0).unwrap_or("").trim().to_string();
        let attributes = check_names(EntityKind::Attribute, 1, header.iter().skip(1).map(str::trim))?;
        let width = attributes.len() + 1;
        let mut objects = Vec::new();
        let mut rows = Vec::new();
        for rec in records {
            let rec = rec.map_err(|e| csv_error(&e))?;
            let line = rec.position().map(|p| p.line() as usize).unwrap_or(0);
            if rec.len() == 1 && rec.get(0).map(str::trim) == Some("") {
                continue;
            }
            if rec.len() != width {
                return Err(ContextError::RowLength {
                    line,
                    found: rec.len().saturating_sub(1),
                    expected: attributes.len(),
                });
            }
            objects.push((line, rec.get(0).unwrap_or("").trim().to_string()));
            let mut row = BitSet::empty(attributes.len());
            for (j, cell) in rec.iter().skip(1).enumerate() {
                match cell.trim() {
                    "1" | "X" | "x" => {
                        row.insert(j);
                    }
                    "0" | "" => {}
                    other => {
                        return Err(ContextError::InvalidCell {
                            line,
                            column: j + 2,
                            token: other.to_string(),
                        })
                    }
                }
            }
            rows.push(row);
        }
        let mut seen = HashSet::new();
        for (line, n) in &objects {
            if !is_valid_name(n) {
                return Err(ContextError::BadNameAt {
                    line: *line,
                    kind: EntityKind::Object,
                    name: n.clone(),
                });
            }
            if !seen.insert(n.as_str()) {
                return Err(ContextError::DuplicateNameAt {
                    line: *line,
                    kind: EntityKind::Object,
                    name: n.clone(),
                });
            }
        }
        FormalContext::new(name, objects.into_iter().map(|(_, n)| n).collect(), attributes, rows)
    }

    pub fn write_csv(&self) -> String {
        let mut writer = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        let header = std::iter::once(self.name.as_str()).chain(self.attributes.iter().map(String::as_str));
        writer.write_record(header).expect("in-memory write");
        for (g, name) in self.objects.iter().enumerate() {
            let cells = (0..self.num_attributes()).map(|m| if self.incident(g, m) { "1" } else { "0" });
            writer
                .write_record(std::iter::once(name.as_str()).chain(cells))
                .expect("in-memory write");
        }
        String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8 input yields utf-8 output")
    }
}

fn csv_error(e: &csv::Error) -> ContextError {
    let line = e.position().map(|p| p.line() as usize).unwrap_or(0);
    syntax(line, e.to_string())
}
