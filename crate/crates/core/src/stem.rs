//! English Snowball (Porter2) stemmer, hand-implemented.
//!
//! Follows the published algorithm: regions R1/R2, five suffix steps plus
//! the apostrophe step, the two exception lists, and y/Y consonant marking.

const VOWELS: &[char] = &['a', 'e', 'i', 'o', 'u', 'y'];
const DOUBLES: &[&str] = &["bb", "dd", "ff", "gg", "mm", "nn", "pp", "rr", "tt"];
const LI_ENDING: &[char] = &['c', 'd', 'e', 'g', 'h', 'k', 'm', 'n', 'r', 't'];

fn is_vowel(c: char) -> bool {
    VOWELS.contains(&c)
}

struct Word {
    chars: Vec<char>,
    r1: usize,
    r2: usize,
}

impl Word {
    fn len(&self) -> usize {
        self.chars.len()
    }

    fn ends_with(&self, suffix: &str) -> bool {
        let s: Vec<char> = suffix.chars().collect();
        self.len() >= s.len() && self.chars[self.len() - s.len()..] == s[..]
    }

    /// True when the matched suffix lies entirely inside R1.
    fn suffix_in_r1(&self, suffix: &str) -> bool {
        self.len() - suffix.chars().count() >= self.r1
    }

    fn suffix_in_r2(&self, suffix: &str) -> bool {
        self.len() - suffix.chars().count() >= self.r2
    }

    fn truncate(&mut self, new_len: usize) {
        self.chars.truncate(new_len);
    }

    fn replace_suffix(&mut self, suffix: &str, replacement: &str) {
        let keep = self.len() - suffix.chars().count();
        self.truncate(keep);
        self.chars.extend(replacement.chars());
    }
}

/// Short syllable: a vowel between non-vowels where the trailing non-vowel
/// is not w, x, or marked Y; or a word-initial vowel plus non-vowel.
fn ends_in_short_syllable(chars: &[char]) -> bool {
    let n = chars.len();
    if n == 2 {
        return is_vowel(chars[0]) && !is_vowel(chars[1]);
    }
    if n >= 3 {
        let (a, b, c) = (chars[n - 3], chars[n - 2], chars[n - 1]);
        return !is_vowel(a)
            && is_vowel(b)
            && !is_vowel(c)
            && c != 'w'
            && c != 'x'
            && c != 'Y';
    }
    false
}

fn contains_vowel(chars: &[char]) -> bool {
    chars.iter().any(|&c| is_vowel(c))
}

fn exception1(word: &str) -> Option<String> {
    let fixed = match word {
        "skis" => "ski",
        "skies" => "sky",
        "dying" => "die",
        "lying" => "lie",
        "tying" => "tie",
        "idly" => "idl",
        "gently" => "gentl",
        "ugly" => "ugli",
        "early" => "earli",
        "only" => "onli",
        "singly" => "singl",
        "sky" | "news" | "howe" | "atlas" | "cosmos" | "bias" | "andes" => word,
        _ => return None,
    };
    Some(fixed.to_string())
}

const EXCEPTION2: &[&str] = &[
    "inning", "outing", "canning", "herring", "earring", "proceed", "exceed", "succeed",
];

fn mark_regions(chars: &[char]) -> (usize, usize) {
    let n = chars.len();
    let prefix_r1 = ["gener", "commun", "arsen"]
        .iter()
        .find(|p| chars.iter().take(p.len()).copied().eq(p.chars()))
        .map(|p| p.len());
    let r1 = prefix_r1.unwrap_or_else(|| region_after(chars, 0));
    let r2 = region_after(chars, r1);
    (r1.min(n), r2.min(n))
}

/// Position after the first non-vowel that follows a vowel, at or past `from`.
fn region_after(chars: &[char], from: usize) -> usize {
    let n = chars.len();
    let mut i = from;
    while i < n && !is_vowel(chars[i]) {
        i += 1;
    }
    while i < n && is_vowel(chars[i]) {
        i += 1;
    }
    if i < n {
        i + 1
    } else {
        n
    }
}

pub fn stem(input: &str) -> String {
    let lowered = input.to_lowercase();
    if let Some(stemmed) = exception1(&lowered) {
        return stemmed;
    }
    let mut chars: Vec<char> = lowered.chars().collect();
    if chars.len() < 3 {
        return lowered;
    }

    // Prelude: drop one leading apostrophe, mark consonant y as Y.
    if chars[0] == '\'' {
        chars.remove(0);
    }
    for i in 0..chars.len() {
        if chars[i] == 'y' && (i == 0 || is_vowel(chars[i - 1])) {
            chars[i] = 'Y';
        }
    }

    let (r1, r2) = mark_regions(&chars);
    let mut w = Word { chars, r1, r2 };

    step_0(&mut w);
    step_1a(&mut w);
    let as_word: String = w.chars.iter().collect();
    if EXCEPTION2.contains(&as_word.as_str()) {
        return as_word;
    }
    step_1b(&mut w);
    step_1c(&mut w);
    step_2(&mut w);
    step_3(&mut w);
    step_4(&mut w);
    step_5(&mut w);

    w.chars
        .iter()
        .map(|&c| if c == 'Y' { 'y' } else { c })
        .collect()
}

fn step_0(w: &mut Word) {
    for suffix in ["'s'", "'s", "'"] {
        if w.ends_with(suffix) {
            let keep = w.len() - suffix.len();
            w.truncate(keep);
            return;
        }
    }
}

fn step_1a(w: &mut Word) {
    if w.ends_with("sses") {
        w.replace_suffix("sses", "ss");
    } else if w.ends_with("ied") || w.ends_with("ies") {
        let suffix = if w.ends_with("ied") { "ied" } else { "ies" };
        let replacement = if w.len() > 4 { "i" } else { "ie" };
        w.replace_suffix(suffix, replacement);
    } else if w.ends_with("us") || w.ends_with("ss") {
        // unchanged
    } else if w.ends_with("s") {
        // Delete only when some vowel precedes the last two characters.
        if w.len() >= 2 && contains_vowel(&w.chars[..w.len() - 2]) {
            let keep = w.len() - 1;
            w.truncate(keep);
        }
    }
}

fn step_1b(w: &mut Word) {
    for suffix in ["eedly", "eed"] {
        if w.ends_with(suffix) {
            if w.suffix_in_r1(suffix) {
                w.replace_suffix(suffix, "ee");
            }
            return;
        }
    }
    for suffix in ["ingly", "edly", "ing", "ed"] {
        if w.ends_with(suffix) {
            let keep = w.len() - suffix.len();
            if !contains_vowel(&w.chars[..keep]) {
                return;
            }
            w.truncate(keep);
            if ["at", "bl", "iz"].iter().any(|s| w.ends_with(s)) {
                w.chars.push('e');
            } else if DOUBLES.iter().any(|d| w.ends_with(d)) {
                let keep = w.len() - 1;
                w.truncate(keep);
            } else if w.r1 >= w.len() && ends_in_short_syllable(&w.chars) {
                w.chars.push('e');
            }
            return;
        }
    }
}

fn step_1c(w: &mut Word) {
    let n = w.len();
    if n >= 3 && (w.chars[n - 1] == 'y' || w.chars[n - 1] == 'Y') && !is_vowel(w.chars[n - 2]) {
        w.chars[n - 1] = 'i';
    }
}

fn step_2(w: &mut Word) {
    const RULES: &[(&str, &str)] = &[
        ("ization", "ize"),
        ("fulness", "ful"),
        ("ousness", "ous"),
        ("iveness", "ive"),
        ("ational", "ate"),
        ("biliti", "ble"),
        ("tional", "tion"),
        ("lessli", "less"),
        ("ousli", "ous"),
        ("entli", "ent"),
        ("ation", "ate"),
        ("alism", "al"),
        ("aliti", "al"),
        ("fulli", "ful"),
        ("iviti", "ive"),
        ("enci", "ence"),
        ("anci", "ance"),
        ("abli", "able"),
        ("izer", "ize"),
        ("ator", "ate"),
        ("alli", "al"),
        ("bli", "ble"),
        ("ogi", "og"),
        ("li", ""),
    ];
    for &(suffix, replacement) in RULES {
        if w.ends_with(suffix) {
            if !w.suffix_in_r1(suffix) {
                return;
            }
            match suffix {
                "ogi" => {
                    if w.len() >= 4 && w.chars[w.len() - 4] == 'l' {
                        w.replace_suffix(suffix, replacement);
                    }
                }
                "li" => {
                    if w.len() >= 3 && LI_ENDING.contains(&w.chars[w.len() - 3]) {
                        w.replace_suffix(suffix, replacement);
                    }
                }
                _ => w.replace_suffix(suffix, replacement),
            }
            return;
        }
    }
}

fn step_3(w: &mut Word) {
    const RULES: &[(&str, &str)] = &[
        ("ational", "ate"),
        ("tional", "tion"),
        ("alize", "al"),
        ("icate", "ic"),
        ("iciti", "ic"),
        ("ative", ""),
        ("ical", "ic"),
        ("ness", ""),
        ("ful", ""),
    ];
    for &(suffix, replacement) in RULES {
        if w.ends_with(suffix) {
            if !w.suffix_in_r1(suffix) {
                return;
            }
            if suffix == "ative" {
                if w.suffix_in_r2(suffix) {
                    w.replace_suffix(suffix, replacement);
                }
            } else {
                w.replace_suffix(suffix, replacement);
            }
            return;
        }
    }
}

fn step_4(w: &mut Word) {
    const SUFFIXES: &[&str] = &[
        "ement", "ance", "ence", "able", "ible", "ment", "ant", "ent", "ism", "ate", "iti",
        "ous", "ive", "ize", "ion", "al", "er", "ic",
    ];
    for &suffix in SUFFIXES {
        if w.ends_with(suffix) {
            if !w.suffix_in_r2(suffix) {
                return;
            }
            if suffix == "ion" {
                let n = w.len();
                if n >= 4 && (w.chars[n - 4] == 's' || w.chars[n - 4] == 't') {
                    w.truncate(n - 3);
                }
            } else {
                let keep = w.len() - suffix.len();
                w.truncate(keep);
            }
            return;
        }
    }
}

fn step_5(w: &mut Word) {
    let n = w.len();
    if n == 0 {
        return;
    }
    if w.chars[n - 1] == 'e' {
        if n > w.r2 || (n > w.r1 && !ends_in_short_syllable(&w.chars[..n - 1])) {
            w.truncate(n - 1);
        }
    } else if w.chars[n - 1] == 'l' && n > w.r2 && n >= 2 && w.chars[n - 2] == 'l' {
        w.truncate(n - 1);
    }
}
