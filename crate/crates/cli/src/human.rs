use std::io::{BufRead, Write};

use ramsey_core::graph::Edge;
use ramsey_core::strategies::Strategy;
use ramsey_core::{BoardState, StrategyError};

/// Reads moves as `u v` or `u-v` (one-based) from standard input and asks
/// again until the move is legal.
#[derive(Clone, Debug, Default)]
pub struct Human;

pub fn parse_move(line: &str, order: usize) -> Result<Edge, String> {
    let nums: Vec<&str> = line.split(|c: char| c == '-' || c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()).collect();
    let [a, b] = nums.as_slice() else { return Err("enter two vertices, e.g. 1 2".into()) };
    let parse = |s: &str| -> Result<usize, String> {
        let v: usize = s.parse().map_err(|_| format!("{s:?} is not a vertex"))?;
        if v == 0 || v > order {
            return Err(format!("vertices run from 1 to {order}"));
        }
        Ok(v - 1)
    };
    let (a, b) = (parse(a)?, parse(b)?);
    Edge::try_new(a, b).ok_or_else(|| "a move needs two distinct vertices".to_string())
}

impl Strategy for Human {
    fn name(&self) -> &'static str {
        "human"
    }

    fn choose(&mut self, state: &BoardState) -> Result<Edge, StrategyError> {
        let stdin = std::io::stdin();
        let mut err = std::io::stderr();
        let (who, left) = state.whose_turn();
        let _ = writeln!(err, "\n{}", state.board().grid());
        loop {
            let _ = write!(err, "{who:?} ({left} left in block), edge: ");
            let _ = err.flush();
            let mut line = String::new();
            match stdin.lock().read_line(&mut line) {
                Ok(0) | Err(_) => return Err(StrategyError::NoMove),
                Ok(_) => {}
            }
            match parse_move(&line, state.order()) {
                Ok(e) if state.board().is_uncolored(e) => return Ok(e),
                Ok(e) => {
                    let _ = writeln!(err, "{e} is already coloured");
                }
                Err(msg) => {
                    let _ = writeln!(err, "{msg}");
                }
            }
        }
    }

    fn box_clone(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn move_syntax() {
        assert_eq!(parse_move("1 2\n", 4).unwrap(), Edge::new(0, 1));
        assert_eq!(parse_move("4-3", 4).unwrap(), Edge::new(2, 3));
        assert!(parse_move("1 5", 4).is_err());
        assert!(parse_move("2 2", 4).is_err());
        assert!(parse_move("x", 4).is_err());
    }
}
