//! Text forms of a partition.
//!
//! * block notation: `{1,3}{2}{4}`
//! * bar notation: `13|2|4`, one digit per point, or `1,3|2|4` with commas
//!   inside blocks once points exceed 9.
//!
//! Points are 1-based and each of `1..n` must appear exactly once. The
//! empty string is the partition of the empty set.

use alloc::string::String;
use alloc::vec::Vec;

use super::Partition;
use crate::error::{Error, Result};

fn parse_error(index: usize, reason: impl Into<String>) -> Error {
    Error::Parse { index, reason: reason.into() }
}

pub(super) fn parse_partition(text: &str) -> Result<Partition> {
    let text = text.trim();
    let blocks = if text.starts_with('{') { block_notation(text)? } else { bar_notation(text)? };
    assemble(blocks)
}

fn parse_index(token: &str, position: usize) -> Result<usize> {
    token.trim().parse::<usize>().map_err(|_| parse_error(position, alloc::format!("bad index {token:?}")))
}

fn block_notation(text: &str) -> Result<Vec<Vec<usize>>> {
    let mut blocks = Vec::new();
    let mut rest = text;
    let mut consumed = 0;
    while !rest.is_empty() {
        let Some(open) = rest.strip_prefix('{') else {
            return Err(parse_error(consumed, "expected '{'"));
        };
        let close = open.find('}').ok_or_else(|| parse_error(consumed, "unclosed block"))?;
        let body = open[..close].trim();
        if body.is_empty() {
            return Err(parse_error(blocks.len() + 1, "empty block"));
        }
        let block = body.split(',').map(|t| parse_index(t, consumed)).collect::<Result<Vec<_>>>()?;
        blocks.push(block);
        consumed += close + 2;
        rest = open[close + 1..].trim_start();
    }
    Ok(blocks)
}

fn bar_notation(text: &str) -> Result<Vec<Vec<usize>>> {
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split('|')
        .enumerate()
        .map(|(b, segment)| {
            let segment = segment.trim();
            if segment.is_empty() {
                return Err(parse_error(b + 1, "empty block"));
            }
            if segment.contains(',') {
                segment.split(',').map(|t| parse_index(t, b + 1)).collect()
            } else {
                segment
                    .chars()
                    .map(|c| {
                        c.to_digit(10)
                            .map(|d| d as usize)
                            .ok_or_else(|| parse_error(b + 1, alloc::format!("bad index {c:?}")))
                    })
                    .collect()
            }
        })
        .collect()
}

fn assemble(blocks: Vec<Vec<usize>>) -> Result<Partition> {
    let n: usize = blocks.iter().map(Vec::len).sum();
    let mut labels = alloc::vec![usize::MAX; n];
    for (b, block) in blocks.iter().enumerate() {
        for &i in block {
            if i == 0 || i > n {
                return Err(parse_error(i, alloc::format!("index {i} outside 1..{n}")));
            }
            if labels[i - 1] != usize::MAX {
                return Err(parse_error(i, alloc::format!("duplicate index {i}")));
            }
            labels[i - 1] = b;
        }
    }
    Partition::from_labels(&labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    #[test]
    fn block_and_bar_forms() {
        let p = parse_partition("{1,3}{2}{4}").unwrap();
        assert_eq!(p.n(), 4);
        assert_eq!(p.blocks(), vec![vec![0, 2], vec![1], vec![3]]);
        assert_eq!(parse_partition("1|2|3").unwrap(), Partition::discrete(3));
        assert_eq!(parse_partition("13|2|4").unwrap(), p);
        assert_eq!(parse_partition("{4}{2}{3,1}").unwrap(), p);
        assert_eq!(parse_partition("1,10|2,3,4,5,6,7,8,9").unwrap().n(), 10);
        assert_eq!(parse_partition("").unwrap(), Partition::discrete(0));
    }

    #[test]
    fn errors_name_the_index() {
        assert_eq!(
            parse_partition("{1,2}{2,3}"),
            Err(Error::Parse { index: 2, reason: "duplicate index 2".to_string() })
        );
        // {1}{3}: n = 2, so 3 leaves a gap at 2.
        assert!(matches!(parse_partition("{1}{3}"), Err(Error::Parse { index: 3, .. })));
        assert!(matches!(parse_partition("{1}{}{2}"), Err(Error::Parse { .. })));
        assert!(matches!(parse_partition("1||2"), Err(Error::Parse { .. })));
        assert!(parse_partition("{1,x}").is_err());
        assert!(parse_partition("{1,2").is_err());
    }

    #[test]
    fn format_is_block_notation() {
        let p = parse_partition("13|2|4").unwrap();
        assert_eq!(p.to_string(), "{1,3}{2}{4}");
        assert_eq!(parse_partition(&p.to_string()).unwrap(), p);
    }
}
