//! Sectioned `key = value` text format.
//!
//! ```text
//! # comment
//! [section]
//! key = value   # trailing comment
//! ```
//!
//! Every value remembers the line it came from so validation errors can
//! point at it.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError {
    pub line: Option<usize>,
    pub key: String,
    pub message: String,
}

impl ConfigError {
    pub fn new(line: Option<usize>, key: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            line,
            key: key.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "line {line}: {}: {}", self.key, self.message),
            None => write!(f, "{}: {}", self.key, self.message),
        }
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Clone, PartialEq)]
struct Entry {
    value: String,
    line: usize,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Config {
    sections: BTreeMap<String, BTreeMap<String, Entry>>,
    section_lines: BTreeMap<String, usize>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut config = Config::default();
        let mut current: Option<String> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('[') {
                let name = rest.strip_suffix(']').ok_or_else(|| {
                    ConfigError::new(Some(line_no), line, "unterminated section header")
                })?;
                let name = name.trim().to_ascii_lowercase();
                if name.is_empty() {
                    return Err(ConfigError::new(Some(line_no), "[]", "empty section name"));
                }
                if config.sections.contains_key(&name) {
                    return Err(ConfigError::new(
                        Some(line_no),
                        format!("[{name}]"),
                        "duplicate section",
                    ));
                }
                config.sections.insert(name.clone(), BTreeMap::new());
                config.section_lines.insert(name.clone(), line_no);
                current = Some(name);
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| ConfigError::new(Some(line_no), line, "expected `key = value`"))?;
            let key = key.trim().to_ascii_lowercase();
            let value = value.trim().to_string();
            let section = current.as_ref().ok_or_else(|| {
                ConfigError::new(Some(line_no), &key, "key outside of any [section]")
            })?;
            if key.is_empty() {
                return Err(ConfigError::new(Some(line_no), "=", "empty key"));
            }
            let entries = config.sections.get_mut(section).expect("section inserted");
            if entries.contains_key(&key) {
                return Err(ConfigError::new(
                    Some(line_no),
                    format!("{section}.{key}"),
                    "duplicate key",
                ));
            }
            entries.insert(
                key,
                Entry {
                    value,
                    line: line_no,
                },
            );
        }
        Ok(config)
    }

    pub fn has_section(&self, section: &str) -> bool {
        self.sections.contains_key(section)
    }

    pub fn sections(&self) -> impl Iterator<Item = &str> {
        self.sections.keys().map(String::as_str)
    }

    pub fn section_line(&self, section: &str) -> Option<usize> {
        self.section_lines.get(section).copied()
    }

    pub fn keys(&self, section: &str) -> Vec<(&str, usize)> {
        self.sections
            .get(section)
            .map(|m| m.iter().map(|(k, e)| (k.as_str(), e.line)).collect())
            .unwrap_or_default()
    }

    pub fn raw(&self, section: &str, key: &str) -> Option<(&str, usize)> {
        self.sections
            .get(section)
            .and_then(|m| m.get(key))
            .map(|e| (e.value.as_str(), e.line))
    }

    pub fn line_of(&self, section: &str, key: &str) -> Option<usize> {
        self.raw(section, key).map(|(_, l)| l)
    }

    /// Flattened `section.key → value` view, for echoing into reports.
    pub fn flatten(&self) -> BTreeMap<String, String> {
        self.sections
            .iter()
            .flat_map(|(s, m)| {
                m.iter()
                    .map(move |(k, e)| (format!("{s}.{k}"), e.value.clone()))
            })
            .collect()
    }

    pub fn get<T: FromStr>(&self, section: &str, key: &str) -> Result<Option<T>, ConfigError> {
        match self.raw(section, key) {
            None => Ok(None),
            Some((value, line)) => value.parse::<T>().map(Some).map_err(|_| {
                ConfigError::new(
                    Some(line),
                    format!("{section}.{key}"),
                    format!("cannot parse {value:?} as {}", short_type_name::<T>()),
                )
            }),
        }
    }

    pub fn get_or<T: FromStr>(
        &self,
        section: &str,
        key: &str,
        default: T,
    ) -> Result<T, ConfigError> {
        Ok(self.get(section, key)?.unwrap_or(default))
    }

    pub fn require<T: FromStr>(&self, section: &str, key: &str) -> Result<T, ConfigError> {
        self.get(section, key)?.ok_or_else(|| {
            ConfigError::new(
                self.section_line(section),
                format!("{section}.{key}"),
                "missing required key",
            )
        })
    }

    /// Comma-separated list.
    pub fn get_list<T: FromStr>(
        &self,
        section: &str,
        key: &str,
    ) -> Result<Option<Vec<T>>, ConfigError> {
        match self.raw(section, key) {
            None => Ok(None),
            Some((value, line)) => value
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|item| {
                    item.parse::<T>().map_err(|_| {
                        ConfigError::new(
                            Some(line),
                            format!("{section}.{key}"),
                            format!(
                                "cannot parse list item {item:?} as {}",
                                short_type_name::<T>()
                            ),
                        )
                    })
                })
                .collect::<Result<Vec<_>, _>>()
                .map(Some),
        }
    }

    /// Rejects sections and keys outside the allowed set.
    pub fn check_known(&self, allowed: &[(&str, &[&str])]) -> Result<(), ConfigError> {
        for (section, entries) in &self.sections {
            let Some((_, keys)) = allowed.iter().find(|(s, _)| s == section) else {
                return Err(ConfigError::new(
                    self.section_line(section),
                    format!("[{section}]"),
                    "unknown section",
                ));
            };
            if let Some((key, entry)) = entries.iter().find(|(k, _)| !keys.contains(&k.as_str())) {
                return Err(ConfigError::new(
                    Some(entry.line),
                    format!("{section}.{key}"),
                    "unknown key",
                ));
            }
        }
        Ok(())
    }
}

fn short_type_name<T>() -> &'static str {
    let name = std::any::type_name::<T>();
    name.rsplit("::").next().unwrap_or(name)
}
