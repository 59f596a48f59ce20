//! Report records rendered as plain text or as `key=value` lines.

use polyid_core::algebra::{Element, StructureAlgebra};
use polyid_core::ncpoly::Var;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

/// A field line; `None` hides it in that format.
#[derive(Debug)]
struct Field {
    key: String,
    /// Printed without its key in text form.
    bare: bool,
    text: Option<String>,
    machine: Option<String>,
}

/// An optional verdict line followed by ordered fields.
#[derive(Debug, Default)]
pub struct Report {
    result: Option<String>,
    fields: Vec<Field>,
}

impl Report {
    pub fn new(result: impl Into<String>) -> Self {
        Report {
            result: Some(result.into()),
            fields: Vec::new(),
        }
    }

    pub fn untitled() -> Self {
        Report::default()
    }

    pub fn field(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        let v = value.to_string();
        self.push(key.into(), Some(v.clone()), Some(v))
    }

    pub fn split_field(&mut self, key: impl Into<String>, text: impl ToString, machine: impl ToString) -> &mut Self {
        self.push(key.into(), Some(text.to_string()), Some(machine.to_string()))
    }

    fn push(&mut self, key: String, text: Option<String>, machine: Option<String>) -> &mut Self {
        self.fields.push(Field {
            key,
            bare: false,
            text,
            machine,
        });
        self
    }

    /// A field whose text form is the value alone.
    pub fn bare_field(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        self.field(key, value);
        if let Some(f) = self.fields.last_mut() {
            f.bare = true;
        }
        self
    }

    /// An element: basis-name combination in text, coordinates in machine form.
    pub fn element(&mut self, key: impl Into<String>, alg: &StructureAlgebra, e: &Element) -> &mut Self {
        self.split_field(key, alg.format_element(e), e)
    }

    /// A variable assignment: `x1=e11, x2=e12` in text, one `key.xN=[..]` line
    /// per variable in machine form.
    pub fn assignment<'a>(
        &mut self,
        key: &str,
        alg: &StructureAlgebra,
        values: impl IntoIterator<Item = (Var, &'a Element)>,
    ) -> &mut Self {
        let values: Vec<(Var, &Element)> = values.into_iter().collect();
        let text = values
            .iter()
            .map(|(v, e)| format!("x{v}={}", alg.format_element(e)))
            .collect::<Vec<_>>()
            .join(", ");
        self.push(key.to_string(), Some(text), None);
        for (v, e) in values {
            self.push(format!("{key}.x{v}"), None, Some(e.to_string()));
        }
        self
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Text => {
                if let Some(r) = &self.result {
                    out.push_str(r);
                    out.push('\n');
                }
                for f in &self.fields {
                    match &f.text {
                        Some(t) if f.bare => out.push_str(&format!("{t}\n")),
                        Some(t) => out.push_str(&format!("{}: {t}\n", f.key)),
                        None => {}
                    }
                }
            }
            Format::Machine => {
                if let Some(r) = &self.result {
                    out.push_str(&format!("result={}\n", r.replace(' ', "_")));
                }
                for f in &self.fields {
                    if let Some(m) = &f.machine {
                        out.push_str(&format!("{}={m}\n", f.key));
                    }
                }
            }
        }
        out
    }
}
