use std::io::{self, BufRead, Write};

use genlstar::automata::MooreMachine;
use genlstar::teacher::Teacher;
use genlstar::{Alphabet, Error, Result, Word};

/// Teacher that asks on stderr and reads answers from stdin. Membership takes
/// y/n; equivalence takes an empty line (or `accept`) or a counterexample,
/// with `ε` for the empty word.
pub struct PromptTeacher {
    alphabet: Alphabet,
}

impl PromptTeacher {
    pub fn new(alphabet: Alphabet) -> Self {
        PromptTeacher { alphabet }
    }

    fn ask(&self, question: &str) -> Result<String> {
        let mut err = io::stderr();
        let _ = write!(err, "{question}");
        let _ = err.flush();
        let mut line = String::new();
        let n = io::stdin()
            .lock()
            .read_line(&mut line)
            .map_err(|e| Error::Parse(format!("reading stdin: {e}")))?;
        if n == 0 {
            return Err(Error::Parse("stdin closed before the learner finished".into()));
        }
        Ok(line.trim().to_string())
    }
}

impl Teacher for PromptTeacher {
    type Word = Word;
    type Output = bool;
    type Hypothesis = MooreMachine;

    fn membership(&self, word: &Word) -> Result<bool> {
        loop {
            let answer = self.ask(&format!("is {} in the language? [y/n] ", self.alphabet.format_word(word)))?;
            match answer.to_lowercase().as_str() {
                "y" | "yes" | "1" => return Ok(true),
                "n" | "no" | "0" => return Ok(false),
                _ => eprintln!("please answer y or n"),
            }
        }
    }

    fn equivalence(&self, hypothesis: &MooreMachine) -> Result<Option<Word>> {
        eprintln!("hypothesis with {} states:", hypothesis.state_count());
        for q in 0..hypothesis.state_count() {
            let moves: Vec<String> = self
                .alphabet
                .letters()
                .map(|a| format!("{}→{}", self.alphabet.name(a), hypothesis.successor(q, a)))
                .collect();
            let mark = if q == hypothesis.initial() { ">" } else { " " };
            let accept = if *hypothesis.output(q) { "accepting" } else { "" };
            eprintln!("{mark} {q}: {} {accept}", moves.join(" "));
        }
        loop {
            let answer = self.ask("accept (empty line) or counterexample: ")?;
            if answer.is_empty() || answer.eq_ignore_ascii_case("accept") {
                return Ok(None);
            }
            match self.alphabet.parse_word(&answer) {
                Ok(w) => return Ok(Some(w)),
                Err(e) => eprintln!("{e}"),
            }
        }
    }
}
