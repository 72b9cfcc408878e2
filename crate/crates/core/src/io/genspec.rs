use crate::error::{Error, Result};
use crate::graph::{generators, Graph};

/// Builds a named graph from a spec string.
///
/// Grammar: `cycle:N`, `complete:N`, `kneser:P,K`, `clebsch`, `petersen`,
/// `circulant:N:D1,D2,...` and `orthogonality:N`. Parse failures report the
/// byte offset of the offending token; parameter values the generator
/// rejects (such as `cycle:2`) surface as that generator's error.
pub fn parse_generator_spec(text: &str) -> Result<Graph> {
    let text = text.trim();
    let mut parts = Parts::new(text);
    let (name_pos, name) = parts.next_field();
    let graph = match name {
        "cycle" => generators::cycle(parts.single_int()?)?,
        "complete" => generators::complete(parts.single_int()?)?,
        "orthogonality" => generators::orthogonality(parts.single_int()?)?,
        "kneser" => {
            let (pos, args) = parts.int_list()?;
            let [p, k] = args[..] else {
                return Err(parse_error(pos, "kneser expects two parameters P,K"));
            };
            generators::kneser(p, k)?
        }
        "circulant" => {
            let n = parts.single_int_then_more()?;
            let (_, offsets) = parts.int_list()?;
            generators::circulant(n, &offsets)?
        }
        "clebsch" => generators::clebsch(),
        "petersen" => generators::petersen(),
        "" => return Err(parse_error(name_pos, "empty generator name")),
        other => return Err(parse_error(name_pos, format!("unknown generator {other:?}"))),
    };
    if let Some(pos) = parts.remaining() {
        return Err(parse_error(pos, "unexpected trailing parameters"));
    }
    Ok(graph)
}

fn parse_error(position: usize, message: impl Into<String>) -> Error {
    Error::SpecParse {
        position,
        message: message.into(),
    }
}

/// Cursor over the `:`-separated fields of a spec string.
struct Parts<'a> {
    text: &'a str,
    pos: usize,
    done: bool,
}

impl<'a> Parts<'a> {
    fn new(text: &'a str) -> Self {
        Parts {
            text,
            pos: 0,
            done: false,
        }
    }

    fn next_field(&mut self) -> (usize, &'a str) {
        let start = self.pos;
        let rest = &self.text[start..];
        match rest.find(':') {
            Some(i) => {
                self.pos = start + i + 1;
                (start, &rest[..i])
            }
            None => {
                self.pos = self.text.len();
                self.done = true;
                (start, rest)
            }
        }
    }

    fn require_field(&mut self) -> Result<(usize, &'a str)> {
        if self.done {
            return Err(parse_error(self.text.len(), "missing parameter"));
        }
        Ok(self.next_field())
    }

    fn single_int(&mut self) -> Result<usize> {
        let (pos, field) = self.require_field()?;
        parse_int(pos, field)
    }

    fn single_int_then_more(&mut self) -> Result<usize> {
        let n = self.single_int()?;
        if self.done {
            return Err(parse_error(self.text.len(), "missing connection set"));
        }
        Ok(n)
    }

    fn int_list(&mut self) -> Result<(usize, Vec<usize>)> {
        let (pos, field) = self.require_field()?;
        let mut values = Vec::new();
        let mut offset = pos;
        for item in field.split(',') {
            values.push(parse_int(offset, item)?);
            offset += item.len() + 1;
        }
        Ok((pos, values))
    }

    fn remaining(&self) -> Option<usize> {
        (!self.done).then_some(self.pos)
    }
}

fn parse_int(pos: usize, s: &str) -> Result<usize> {
    let trimmed = s.trim();
    if trimmed.is_empty() || !trimmed.bytes().all(|b| b.is_ascii_digit()) {
        return Err(parse_error(pos, format!("expected a non-negative integer, got {s:?}")));
    }
    trimmed
        .parse()
        .map_err(|_| parse_error(pos, format!("integer {s:?} out of range")))
}
