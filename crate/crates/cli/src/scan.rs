//! Delimiter balance scan used by the REPL to decide whether a buffered
//! input is a complete form. `<` and `>` are always delimiters in this
//! syntax (comparisons are named functions), so a character scan suffices.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Balance {
    /// Every opened delimiter is closed.
    Closed,
    /// At least one delimiter is still open; more input may complete it.
    Open,
    /// A closer that cannot match; hand to the parser for the error.
    Mismatch,
}

pub fn balance(src: &str) -> Balance {
    let mut stack = Vec::new();
    let mut chars = src.chars();
    while let Some(c) = chars.next() {
        match c {
            ';' => {
                for c in chars.by_ref() {
                    if c == '\n' {
                        break;
                    }
                }
            }
            '(' | '[' | '{' | '<' => stack.push(c),
            ')' | ']' | '}' | '>' => {
                let wanted = match c {
                    ')' => '(',
                    ']' => '[',
                    '}' => '{',
                    _ => '<',
                };
                if stack.pop() != Some(wanted) {
                    return Balance::Mismatch;
                }
            }
            _ => {}
        }
    }
    if stack.is_empty() {
        Balance::Closed
    } else {
        Balance::Open
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_open_mismatch() {
        assert_eq!(balance("(match-all {1 2} (list integer) [_ 0])"), Balance::Closed);
        assert_eq!(balance("(define $x\n  {1 2"), Balance::Open);
        assert_eq!(balance("(]"), Balance::Mismatch);
        assert_eq!(balance("; only a comment ( [\n"), Balance::Closed);
        assert_eq!(balance("<cons $x _>"), Balance::Closed);
    }
}
