//! Whitespace-and-punctuation tokenizer with a pluggable POS tagger.
//!
//! The tokenizer is plumbing, not linguistics: it splits on whitespace,
//! peels leading/trailing punctuation into single-character tokens, and
//! splits the clitics in [`CLITICS`] off their host word (`don't` →
//! `do` + `n't`). Curly apostrophes are normalized to straight ones first.
//! No characters of any word are dropped or altered beyond that regrouping,
//! so the output is lossless with respect to word content.
//!
//! POS tags come from a [`PosTagger`]. The bundled [`LexiconTagger`] looks
//! the lowercased surface up in a fixed lexicon of function words, irregular
//! verbs, and common adjectives/adverbs, then falls back to suffix rules,
//! and finally defaults to noun for unknown alphabetic words and
//! [`PosTag::Other`] for anything without a letter. The tagger's job here is
//! coarse: downstream features only distinguish content words (noun, verb,
//! adjective, adverb) from everything else.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

/// Part-of-speech tag at the granularity the feature extractor needs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PosTag {
    /// Nouns, including proper nouns.
    Noun,
    /// Verbs in any inflection.
    Verb,
    /// Adjectives.
    Adjective,
    /// Adverbs.
    Adverb,
    /// Function words, punctuation, numbers — everything non-content.
    Other,
}

impl PosTag {
    /// Whether tokens with this tag count as content words.
    pub fn is_content(self) -> bool {
        !matches!(self, PosTag::Other)
    }
}

/// One token: its surface form and POS tag.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    /// The token text as it appeared (modulo apostrophe normalization).
    pub surface: String,
    /// Tag assigned by the tagger.
    pub pos: PosTag,
}

/// Assigns a POS tag to a single token surface.
///
/// Implementations must be deterministic; they see one surface at a time
/// (no sentence context), which is all the feature definitions require.
pub trait PosTagger {
    /// Tags one token surface.
    fn tag(&self, surface: &str) -> PosTag;
}

/// Contractions split off their host word, longest match first.
///
/// This table is the tokenizer's contraction contract: a word ending in one
/// of these (case-insensitively) is split into stem + clitic, repeatedly,
/// as long as a nonempty stem remains. The clitic keeps its own token and
/// is tagged [`PosTag::Other`] by the bundled tagger.
pub const CLITICS: [&str; 7] = ["n't", "'ll", "'re", "'ve", "'s", "'d", "'m"];

/// Tokenizes with the bundled [`LexiconTagger`].
pub fn tokenize(text: &str) -> Vec<Token> {
    tokenize_with(text, &LexiconTagger::default())
}

/// Tokenizes `text` and tags each token with `tagger`.
///
/// Empty or all-whitespace text yields an empty list.
pub fn tokenize_with(text: &str, tagger: &dyn PosTagger) -> Vec<Token> {
    let normalized = text.replace(['\u{2019}', '\u{2018}'], "'");
    let mut tokens = Vec::new();
    for chunk in normalized.split_whitespace() {
        for surface in split_chunk(chunk) {
            let pos = tagger.tag(&surface);
            tokens.push(Token { surface, pos });
        }
    }
    tokens
}

/// Splits one whitespace-delimited chunk into token surfaces.
fn split_chunk(chunk: &str) -> Vec<String> {
    let chars: Vec<char> = chunk.chars().collect();

    // Peel leading and trailing punctuation one character at a time.
    let mut start = 0;
    let mut end = chars.len();
    while start < end && !chars[start].is_alphanumeric() {
        start += 1;
    }
    while end > start && !chars[end - 1].is_alphanumeric() {
        end -= 1;
    }

    let mut surfaces: Vec<String> = chars[..start].iter().map(|c| c.to_string()).collect();
    if start < end {
        let core: String = chars[start..end].iter().collect();
        surfaces.extend(split_clitics(&core));
    }
    surfaces.extend(chars[end..].iter().map(|c| c.to_string()));
    surfaces
}

/// Repeatedly splits trailing clitics off a word core.
fn split_clitics(core: &str) -> Vec<String> {
    let mut parts = Vec::new();
    let mut rest = core.to_owned();
    'peel: loop {
        for clitic in CLITICS {
            let Some(cut) = rest.len().checked_sub(clitic.len()) else {
                continue;
            };
            if cut == 0 || !rest.is_char_boundary(cut) {
                continue;
            }
            if rest[cut..].eq_ignore_ascii_case(clitic) {
                let tail = rest.split_off(cut);
                parts.push(tail);
                continue 'peel;
            }
        }
        break;
    }
    parts.push(rest);
    parts.reverse();
    parts
}

/// Lexicon-plus-suffix-rules tagger.
///
/// Tagging order: no alphabetic character → [`PosTag::Other`]; otherwise a
/// lowercased lexicon lookup; otherwise the suffix rules documented on
/// [`LexiconTagger::tag_by_suffix`]; otherwise noun.
pub struct LexiconTagger {
    lexicon: HashMap<&'static str, PosTag>,
}

impl Default for LexiconTagger {
    fn default() -> Self {
        let mut lexicon = HashMap::new();
        for word in FUNCTION_WORDS {
            lexicon.insert(*word, PosTag::Other);
        }
        for word in COMMON_VERBS {
            lexicon.insert(*word, PosTag::Verb);
        }
        for word in COMMON_ADJECTIVES {
            lexicon.insert(*word, PosTag::Adjective);
        }
        for word in COMMON_ADVERBS {
            lexicon.insert(*word, PosTag::Adverb);
        }
        for word in COMMON_NOUNS {
            lexicon.insert(*word, PosTag::Noun);
        }
        LexiconTagger { lexicon }
    }
}

impl PosTagger for LexiconTagger {
    fn tag(&self, surface: &str) -> PosTag {
        if !surface.chars().any(char::is_alphabetic) {
            return PosTag::Other;
        }
        let lower = surface.to_lowercase();
        if let Some(&tag) = self.lexicon.get(lower.as_str()) {
            return tag;
        }
        Self::tag_by_suffix(&lower)
    }
}

impl LexiconTagger {
    /// Suffix fallback for words missing from the lexicon.
    ///
    /// Rules, in order: `-ly` (5+ letters) → adverb; `-tion/-sion/-ment/
    /// -ness/-ance/-ence/-ship/-hood/-ism/-ity` → noun; `-ful/-less/-ous/
    /// -ive/-able/-ible/-ish` → adjective; `-ize/-ise/-ify` and `-ing`
    /// (5+ letters) and `-ed` (4+ letters) → verb; anything else → noun.
    fn tag_by_suffix(lower: &str) -> PosTag {
        let n = lower.len();
        if n >= 5 && lower.ends_with("ly") {
            return PosTag::Adverb;
        }
        const NOUN_SUFFIXES: [&str; 10] = [
            "tion", "sion", "ment", "ness", "ance", "ence", "ship", "hood", "ism", "ity",
        ];
        for suffix in NOUN_SUFFIXES {
            if n >= suffix.len() + 2 && lower.ends_with(suffix) {
                return PosTag::Noun;
            }
        }
        const ADJ_SUFFIXES: [&str; 7] = ["ful", "less", "ous", "ive", "able", "ible", "ish"];
        for suffix in ADJ_SUFFIXES {
            if n >= suffix.len() + 2 && lower.ends_with(suffix) {
                return PosTag::Adjective;
            }
        }
        for suffix in ["ize", "ise", "ify"] {
            if n >= suffix.len() + 2 && lower.ends_with(suffix) {
                return PosTag::Verb;
            }
        }
        if (n >= 5 && lower.ends_with("ing")) || (n >= 4 && lower.ends_with("ed")) {
            return PosTag::Verb;
        }
        PosTag::Noun
    }
}

// ---------------------------------------------------------------------------
// Bundled lexicon
// ---------------------------------------------------------------------------

/// Determiners, pronouns, prepositions, conjunctions, auxiliaries, negation
/// particles, and spelled-out numbers: never content words.
const FUNCTION_WORDS: &[&str] = &[
    // determiners and quantifiers
    "a",
    "an",
    "the",
    "this",
    "that",
    "these",
    "those",
    "each",
    "every",
    "either",
    "neither",
    "some",
    "any",
    "no",
    "all",
    "both",
    "few",
    "many",
    "much",
    "more",
    "most",
    "other",
    "another",
    "such",
    "same",
    // pronouns
    "i",
    "you",
    "he",
    "she",
    "it",
    "we",
    "they",
    "me",
    "him",
    "her",
    "us",
    "them",
    "my",
    "your",
    "his",
    "its",
    "our",
    "their",
    "mine",
    "yours",
    "hers",
    "ours",
    "theirs",
    "myself",
    "yourself",
    "himself",
    "herself",
    "itself",
    "ourselves",
    "yourselves",
    "themselves",
    "who",
    "whom",
    "whose",
    "which",
    "what",
    "one",
    "someone",
    "anyone",
    "everyone",
    "nobody",
    "somebody",
    "anybody",
    "everybody",
    // prepositions
    "of",
    "in",
    "on",
    "at",
    "by",
    "for",
    "with",
    "from",
    "to",
    "into",
    "onto",
    "over",
    "under",
    "above",
    "below",
    "between",
    "among",
    "through",
    "during",
    "before",
    "after",
    "against",
    "about",
    "around",
    "behind",
    "beyond",
    "near",
    "off",
    "out",
    "up",
    "down",
    "across",
    "along",
    "past",
    "since",
    "until",
    "till",
    "within",
    "without",
    "upon",
    "toward",
    "towards",
    "despite",
    "except",
    "per",
    "via",
    // conjunctions and complementizers
    "and",
    "or",
    "but",
    "nor",
    "so",
    "yet",
    "if",
    "because",
    "although",
    "though",
    "while",
    "whereas",
    "unless",
    "than",
    "as",
    "when",
    "where",
    "whether",
    "once",
    // auxiliaries and modals
    "be",
    "am",
    "is",
    "are",
    "was",
    "were",
    "been",
    "being",
    "have",
    "has",
    "had",
    "having",
    "do",
    "does",
    "did",
    "done",
    "doing",
    "will",
    "would",
    "shall",
    "should",
    "can",
    "could",
    "may",
    "might",
    "must",
    "ought",
    // negation and existential particles
    "not",
    "n't",
    "there",
    // spelled-out numbers
    "two",
    "three",
    "four",
    "five",
    "six",
    "seven",
    "eight",
    "nine",
    "ten",
    "hundred",
    "thousand",
    "million",
    "billion",
];

/// Irregular and very common verbs the suffix rules would miss.
const COMMON_VERBS: &[&str] = &[
    "go",
    "goes",
    "went",
    "gone",
    "get",
    "gets",
    "got",
    "gotten",
    "make",
    "makes",
    "made",
    "take",
    "takes",
    "took",
    "taken",
    "come",
    "comes",
    "came",
    "see",
    "sees",
    "saw",
    "seen",
    "know",
    "knows",
    "knew",
    "known",
    "think",
    "thinks",
    "thought",
    "say",
    "says",
    "said",
    "find",
    "finds",
    "found",
    "give",
    "gives",
    "gave",
    "given",
    "tell",
    "tells",
    "told",
    "become",
    "becomes",
    "became",
    "show",
    "shows",
    "shown",
    "leave",
    "leaves",
    "left",
    "feel",
    "feels",
    "felt",
    "put",
    "puts",
    "bring",
    "brings",
    "brought",
    "begin",
    "begins",
    "began",
    "begun",
    "keep",
    "keeps",
    "kept",
    "hold",
    "holds",
    "held",
    "write",
    "writes",
    "wrote",
    "written",
    "stand",
    "stands",
    "stood",
    "hear",
    "hears",
    "heard",
    "let",
    "lets",
    "mean",
    "means",
    "meant",
    "meet",
    "meets",
    "met",
    "run",
    "runs",
    "ran",
    "pay",
    "pays",
    "paid",
    "sit",
    "sits",
    "sat",
    "speak",
    "speaks",
    "spoke",
    "spoken",
    "lie",
    "lies",
    "lay",
    "lain",
    "lead",
    "leads",
    "led",
    "read",
    "reads",
    "grow",
    "grows",
    "grew",
    "grown",
    "lose",
    "loses",
    "lost",
    "fall",
    "falls",
    "fell",
    "fallen",
    "send",
    "sends",
    "sent",
    "build",
    "builds",
    "built",
    "understand",
    "understands",
    "understood",
    "draw",
    "draws",
    "drew",
    "drawn",
    "break",
    "breaks",
    "broke",
    "broken",
    "spend",
    "spends",
    "spent",
    "cut",
    "cuts",
    "rise",
    "rises",
    "rose",
    "risen",
    "drive",
    "drives",
    "drove",
    "driven",
    "buy",
    "buys",
    "bought",
    "wear",
    "wears",
    "wore",
    "worn",
    "choose",
    "chooses",
    "chose",
    "chosen",
    "eat",
    "eats",
    "ate",
    "eaten",
    "sleep",
    "sleeps",
    "slept",
    "teach",
    "teaches",
    "taught",
    "win",
    "wins",
    "won",
    "sell",
    "sells",
    "sold",
    "forget",
    "forgets",
    "forgot",
    "forgotten",
    "throw",
    "throws",
    "threw",
    "thrown",
    "catch",
    "catches",
    "caught",
    "fly",
    "flies",
    "flew",
    "flown",
    "ride",
    "rides",
    "rode",
    "ridden",
    "sing",
    "sings",
    "sang",
    "sung",
    "drink",
    "drinks",
    "drank",
    "drunk",
    "swim",
    "swims",
    "swam",
    "swum",
    "use",
    "uses",
    "want",
    "wants",
    "live",
    "look",
    "looks",
    "call",
    "calls",
    "try",
    "tries",
    "tried",
    "need",
    "needs",
    "ask",
    "asks",
    "work",
    "works",
    "seem",
    "seems",
    "help",
    "helps",
    "play",
    "plays",
    "move",
    "moves",
    "like",
    "likes",
    "believe",
    "believes",
    "turn",
    "turns",
    "start",
    "starts",
];

/// Common adjectives, including irregular comparatives.
const COMMON_ADJECTIVES: &[&str] = &[
    "good",
    "bad",
    "big",
    "small",
    "large",
    "great",
    "new",
    "old",
    "young",
    "high",
    "low",
    "long",
    "short",
    "own",
    "right",
    "wrong",
    "hot",
    "cold",
    "warm",
    "cool",
    "easy",
    "hard",
    "early",
    "late",
    "happy",
    "sad",
    "fast",
    "slow",
    "strong",
    "weak",
    "rich",
    "poor",
    "full",
    "empty",
    "open",
    "closed",
    "light",
    "dark",
    "heavy",
    "clean",
    "dirty",
    "safe",
    "important",
    "different",
    "similar",
    "difficult",
    "simple",
    "complex",
    "possible",
    "impossible",
    "real",
    "true",
    "false",
    "nice",
    "fine",
    "free",
    "busy",
    "ready",
    "clear",
    "deep",
    "wide",
    "narrow",
    "thick",
    "thin",
    "tall",
    "pretty",
    "beautiful",
    "ugly",
    "angry",
    "afraid",
    "certain",
    "sure",
    "whole",
    "main",
    "next",
    "last",
    "first",
    "second",
    "third",
    "best",
    "better",
    "worse",
    "worst",
    "least",
    "less",
    "little",
    "able",
    "white",
    "black",
    "red",
    "green",
    "blue",
    "yellow",
    "brown",
    "friendly",
    "lovely",
    "lonely",
    "silly",
    "holy",
];

/// Common adverbs, mostly ones the `-ly` rule cannot reach.
const COMMON_ADVERBS: &[&str] = &[
    "very",
    "quite",
    "rather",
    "too",
    "also",
    "just",
    "even",
    "still",
    "again",
    "always",
    "never",
    "often",
    "sometimes",
    "usually",
    "soon",
    "now",
    "then",
    "here",
    "today",
    "tomorrow",
    "yesterday",
    "away",
    "back",
    "together",
    "perhaps",
    "maybe",
    "almost",
    "already",
    "ever",
    "far",
    "well",
    "instead",
    "anyway",
    "however",
    "therefore",
    "thus",
    "only",
    "ago",
    "enough",
    "indeed",
];

/// Nouns that the suffix rules would mis-tag (`-ly`, `-ing`, `-ed` lookalikes).
const COMMON_NOUNS: &[&str] = &[
    "family",
    "families",
    "italy",
    "july",
    "belly",
    "jelly",
    "rally",
    "ally",
    "butterfly",
    "assembly",
    "monopoly",
    "lily",
    "thing",
    "things",
    "something",
    "anything",
    "everything",
    "nothing",
    "morning",
    "evening",
    "king",
    "ring",
    "spring",
    "string",
    "wing",
    "building",
    "meeting",
    "feeling",
    "bed",
    "speed",
    "seed",
    "feed",
    "breed",
    "deed",
];
