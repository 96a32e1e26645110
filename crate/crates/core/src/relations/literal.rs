use super::{EquivRelation, RelationError};

fn parse_number(token: &str) -> Result<usize, RelationError> {
    token
        .trim()
        .parse()
        .map_err(|_| RelationError::Literal(format!("`{}` is not an element index", token.trim())))
}

/// Parses `{0,2},{1,3}` (optionally prefixed by `rel:`) on a carrier of
/// `size` elements. Unlisted elements are singletons.
pub fn parse_relation_literal(size: usize, text: &str) -> Result<EquivRelation, RelationError> {
    let text = text.trim();
    let body = text.strip_prefix("rel:").unwrap_or(text).trim();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut rest = body;
    while !rest.is_empty() {
        let inner = rest
            .strip_prefix('{')
            .ok_or_else(|| RelationError::Literal(format!("expected `{{` at `{rest}`")))?;
        let close = inner
            .find('}')
            .ok_or_else(|| RelationError::Literal("unterminated class".into()))?;
        let class: Vec<usize> = inner[..close]
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(parse_number)
            .collect::<Result<_, _>>()?;
        if class.is_empty() {
            return Err(RelationError::Literal("empty class".into()));
        }
        classes.push(class);
        rest = inner[close + 1..].trim_start();
        if let Some(r) = rest.strip_prefix(',') {
            rest = r.trim_start();
            if rest.is_empty() {
                return Err(RelationError::Literal("trailing comma".into()));
            }
        } else if !rest.is_empty() {
            return Err(RelationError::Literal(format!("expected `,` at `{rest}`")));
        }
    }
    EquivRelation::from_classes(size, &classes)
}

/// Parses a comma-separated element list such as `0,2`.
pub fn parse_subset_literal(text: &str) -> Result<Vec<usize>, RelationError> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(parse_number).collect()
}
