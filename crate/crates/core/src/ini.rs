//! Minimal INI reader that keeps line numbers for diagnostics.
//!
//! Grammar: `key = value` pairs, optional `[section]` headers, and `#` or
//! `;` comments.  Keys before the first header belong to the section `""`.

use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub struct IniEntry {
    pub section: String,
    pub key: String,
    pub value: String,
    pub line: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IniError {
    /// 1-based line, 0 when the error is not tied to a line.
    pub line: usize,
    pub message: String,
}

impl IniError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            message: message.into(),
        }
    }
}

impl fmt::Display for IniError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line > 0 {
            write!(f, "line {}: {}", self.line, self.message)
        } else {
            write!(f, "{}", self.message)
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct IniDocument {
    pub entries: Vec<IniEntry>,
    /// Section headers in file order, with their line numbers.
    pub headers: Vec<(String, usize)>,
}

impl IniDocument {
    pub fn parse(text: &str) -> Result<Self, Vec<IniError>> {
        let mut entries: Vec<IniEntry> = Vec::new();
        let mut headers = Vec::new();
        let mut errors = Vec::new();
        let mut section = String::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = strip_comment(raw).trim();
            if content.is_empty() {
                continue;
            }
            if let Some(rest) = content.strip_prefix('[') {
                match rest.strip_suffix(']') {
                    Some(name) => {
                        section = name.trim().to_string();
                        headers.push((section.clone(), line));
                    }
                    None => errors.push(IniError::new(line, format!("malformed section header `{content}`"))),
                }
                continue;
            }
            let Some((key, value)) = content.split_once('=') else {
                errors.push(IniError::new(line, format!("expected `key = value`, got `{content}`")));
                continue;
            };
            let key = key.trim().to_string();
            if key.is_empty() {
                errors.push(IniError::new(line, "empty key"));
                continue;
            }
            if let Some(prev) = entries.iter().find(|e| e.section == section && e.key == key) {
                errors.push(IniError::new(
                    line,
                    format!("duplicate key `{key}` (first set on line {})", prev.line),
                ));
                continue;
            }
            entries.push(IniEntry {
                section: section.clone(),
                key,
                value: value.trim().to_string(),
                line,
            });
        }
        if errors.is_empty() {
            Ok(Self { entries, headers })
        } else {
            Err(errors)
        }
    }

    pub fn get(&self, section: &str, key: &str) -> Option<&IniEntry> {
        self.entries.iter().find(|e| e.section == section && e.key == key)
    }

    pub fn has_section(&self, section: &str) -> bool {
        self.sections().contains(&section)
    }

    /// Section names in order of first appearance, including empty ones;
    /// "" is the top level.
    pub fn sections(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        let named = self.headers.iter().map(|h| h.0.as_str());
        for name in self
            .entries
            .iter()
            .map(|e| e.section.as_str())
            .filter(|s| s.is_empty())
            .chain(named)
        {
            if !out.contains(&name) {
                out.push(name);
            }
        }
        out
    }

    pub fn header_line(&self, section: &str) -> Option<usize> {
        self.headers.iter().find(|h| h.0 == section).map(|h| h.1)
    }

    /// One error per key in `section` that is not in `known`, naming the
    /// closest valid key.
    pub fn unknown_keys(&self, section: &str, known: &[&str]) -> Vec<IniError> {
        self.entries
            .iter()
            .filter(|e| e.section == section && !known.contains(&e.key.as_str()))
            .map(|e| {
                let msg = match nearest(&e.key, known) {
                    Some(best) => format!("unknown key `{}` (did you mean `{best}`?)", e.key),
                    None => format!("unknown key `{}`", e.key),
                };
                IniError::new(e.line, msg)
            })
            .collect()
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find(['#', ';']) {
        Some(i) => &line[..i],
        None => line,
    }
}

/// Closest candidate by Levenshtein distance.
pub fn nearest<'a>(key: &str, candidates: &[&'a str]) -> Option<&'a str> {
    candidates
        .iter()
        .map(|c| (strsim::levenshtein(key, c), *c))
        .min_by_key(|(d, _)| *d)
        .map(|(_, c)| c)
}
