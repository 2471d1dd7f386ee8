//! Phoneme front end: text and alignment-file ingestion, the many-to-one
//! phoneme→viseme map, and the grounding of phonemes into visual units that
//! index keyframes downstream.
//!
//! English goes through an embedded fixed lexicon (no out-of-vocabulary
//! guessing); Mandarin goes through full pinyin initial/final decomposition
//! with tones stripped, since tone does not move the mouth.

mod lexicon;
mod tables;

use std::collections::HashMap;
use std::path::Path;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use tables::{NEUTRAL_MOUTH, VISEME_COUNT, VISEME_TABLE};

/// Number of distinct visual-unit ids across both languages. Unit ids are
/// `viseme` for single-phoneme units and `(initial_viseme + 1) * 12 +
/// final_viseme` for merged pinyin syllables, so the space is 13 * 12.
pub const UNIT_VOCAB: usize = 13 * VISEME_COUNT;

#[derive(Debug, Error, PartialEq)]
pub enum PhonemeError {
    #[error("unknown word `{0}`")]
    UnknownWord(String),
    #[error("unsupported language `{0}`")]
    UnsupportedLanguage(String),
    #[error("unknown phoneme `{0}`")]
    UnknownPhoneme(String),
    #[error("parse error at line {0}")]
    ParseError(usize),
    #[error("intervals {0} and {1} overlap")]
    OverlapError(usize, usize),
    #[error("initial `{0}` has no following final")]
    DanglingInitial(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Lang {
    Zh,
    En,
}

impl std::str::FromStr for Lang {
    type Err = PhonemeError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "zh" => Ok(Lang::Zh),
            "en" => Ok(Lang::En),
            other => Err(PhonemeError::UnsupportedLanguage(other.to_string())),
        }
    }
}

/// A phoneme symbol validated against its language inventory.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PhonemeSymbol {
    pub symbol: String,
    pub lang: Lang,
}

impl PhonemeSymbol {
    pub fn new(symbol: &str, lang: Lang) -> Result<Self, PhonemeError> {
        if inventory(lang).contains_key(symbol) {
            Ok(PhonemeSymbol { symbol: symbol.to_string(), lang })
        } else {
            Err(PhonemeError::UnknownPhoneme(symbol.to_string()))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MouthParams {
    pub opening: f64,
    pub width: f64,
    pub rounding: f64,
}

impl MouthParams {
    /// Euclidean distance in (opening, width, rounding) space.
    pub fn distance(&self, other: &MouthParams) -> f64 {
        let d0 = self.opening - other.opening;
        let d1 = self.width - other.width;
        let d2 = self.rounding - other.rounding;
        (d0 * d0 + d1 * d1 + d2 * d2).sqrt()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VisemeClass {
    pub id: usize,
    pub name: &'static str,
    pub mouth_archetype: MouthParams,
}

/// All twelve viseme classes in id order.
pub fn viseme_classes() -> Vec<VisemeClass> {
    VISEME_TABLE
        .iter()
        .enumerate()
        .map(|(id, &(name, opening, width, rounding))| VisemeClass {
            id,
            name,
            mouth_archetype: MouthParams { opening, width, rounding },
        })
        .collect()
}

pub fn viseme_by_id(id: usize) -> VisemeClass {
    let (name, opening, width, rounding) = VISEME_TABLE[id];
    VisemeClass { id, name, mouth_archetype: MouthParams { opening, width, rounding } }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TimedPhoneme {
    pub phoneme: PhonemeSymbol,
    pub onset: f64,
    pub offset: f64,
    pub viseme: usize,
}

/// One character-level visual unit: the phoneme (en) or merged
/// initial+final syllable (zh) that a keyframe will be anchored to.
#[derive(Clone, Debug, PartialEq)]
pub struct VisualUnit {
    pub id: usize,
    pub phonemes: Vec<PhonemeSymbol>,
    pub onset: f64,
    pub offset: f64,
    pub duration: f64,
    /// Viseme rendered for this unit: the final's viseme for zh syllables.
    pub viseme: usize,
}

fn inventory(lang: Lang) -> &'static HashMap<&'static str, usize> {
    static EN: OnceLock<HashMap<&'static str, usize>> = OnceLock::new();
    static ZH: OnceLock<HashMap<&'static str, usize>> = OnceLock::new();
    match lang {
        Lang::En => EN.get_or_init(|| tables::EN_PHONEMES.iter().copied().collect()),
        Lang::Zh => ZH.get_or_init(|| {
            let mut m: HashMap<&'static str, usize> = tables::ZH_INITIALS.iter().copied().collect();
            m.extend(tables::ZH_FINALS.iter().copied());
            m
        }),
    }
}

fn is_zh_initial(symbol: &str) -> bool {
    tables::ZH_INITIALS.iter().any(|&(s, _)| s == symbol)
}

/// Map a phoneme to its viseme class. Total over both inventories.
pub fn phoneme_to_viseme(p: &PhonemeSymbol) -> Result<VisemeClass, PhonemeError> {
    let id = *inventory(p.lang)
        .get(p.symbol.as_str())
        .ok_or_else(|| PhonemeError::UnknownPhoneme(p.symbol.clone()))?;
    Ok(viseme_by_id(id))
}

fn strip_tone(syllable: &str) -> String {
    let mut out = String::new();
    for ch in syllable.chars() {
        match ch {
            '0'..='5' => {}
            'ā' | 'á' | 'ǎ' | 'à' => out.push('a'),
            'ō' | 'ó' | 'ǒ' | 'ò' => out.push('o'),
            'ē' | 'é' | 'ě' | 'è' => out.push('e'),
            'ī' | 'í' | 'ǐ' | 'ì' => out.push('i'),
            'ū' | 'ú' | 'ǔ' | 'ù' => out.push('u'),
            'ǖ' | 'ǘ' | 'ǚ' | 'ǜ' => out.push('ü'),
            'v' => out.push('ü'),
            c => out.push(c),
        }
    }
    out
}

/// Split one toneless pinyin syllable into (initial?, final).
fn split_pinyin(syllable: &str) -> Result<(Option<&'static str>, &'static str), PhonemeError> {
    let find_final = |s: &str| -> Option<&'static str> {
        tables::ZH_FINALS.iter().map(|&(f, _)| f).find(|&f| f == s)
    };
    // y-/w- spellings are finals in disguise
    for &(written, phonemic) in tables::ZH_Y_W_SYLLABLES.iter() {
        if syllable == written {
            return Ok((None, find_final(phonemic).expect("table entry")));
        }
    }
    // longest-match initial, then the remainder must be a final
    let mut initial: Option<&'static str> = None;
    for &(ini, _) in tables::ZH_INITIALS.iter() {
        if syllable.starts_with(ini) && initial.map_or(true, |cur| ini.len() > cur.len()) {
            initial = Some(ini);
        }
    }
    match initial {
        Some(ini) => {
            let rest = &syllable[ini.len()..];
            if rest.is_empty() {
                return Err(PhonemeError::UnknownWord(syllable.to_string()));
            }
            // after j/q/x the written u is phonemically ü
            let rest = if matches!(ini, "j" | "q" | "x") && rest.starts_with('u') {
                format!("ü{}", &rest[1..])
            } else {
                rest.to_string()
            };
            find_final(&rest)
                .map(|f| (Some(ini), f))
                .ok_or_else(|| PhonemeError::UnknownWord(syllable.to_string()))
        }
        None => find_final(syllable)
            .map(|f| (None, f))
            .ok_or_else(|| PhonemeError::UnknownWord(syllable.to_string())),
    }
}

/// Convert text into a phoneme sequence.
///
/// English text is whitespace/punctuation split and looked up in the
/// embedded lexicon; Mandarin text is expected as whitespace-separated
/// pinyin syllables (tone digits or diacritics allowed, both stripped).
pub fn text_to_phonemes(text: &str, lang: Lang) -> Result<Vec<PhonemeSymbol>, PhonemeError> {
    let mut out = Vec::new();
    for raw in text.split_whitespace() {
        let word: String = raw
            .chars()
            .filter(|c| !matches!(c, '.' | ',' | '!' | '?' | ';' | ':' | '"' | '\'' | '(' | ')'))
            .collect();
        if word.is_empty() {
            continue;
        }
        match lang {
            Lang::En => {
                let key = word.to_ascii_lowercase();
                let phones = lexicon::lookup_en(&key)
                    .ok_or_else(|| PhonemeError::UnknownWord(word.clone()))?;
                for ph in phones {
                    out.push(PhonemeSymbol::new(ph, Lang::En)?);
                }
            }
            Lang::Zh => {
                let syl = strip_tone(&word.to_ascii_lowercase());
                let (ini, fin) = split_pinyin(&syl)?;
                if let Some(ini) = ini {
                    out.push(PhonemeSymbol::new(ini, Lang::Zh)?);
                }
                out.push(PhonemeSymbol::new(fin, Lang::Zh)?);
            }
        }
    }
    Ok(out)
}

/// Parse an alignment file: one `SYMBOL ONSET OFFSET` record per line,
/// seconds as decimals, `#` starts a comment. The result is sorted by onset
/// and checked for interval overlap.
pub fn load_alignment(path: &Path, lang: Lang) -> Result<Vec<TimedPhoneme>, PhonemeError> {
    let text = std::fs::read_to_string(path).map_err(|_| PhonemeError::ParseError(0))?;
    parse_alignment(&text, lang)
}

/// Same as [`load_alignment`] but over an in-memory string.
pub fn parse_alignment(text: &str, lang: Lang) -> Result<Vec<TimedPhoneme>, PhonemeError> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        let (sym, onset, offset) = match (it.next(), it.next(), it.next(), it.next()) {
            (Some(s), Some(a), Some(b), None) => {
                let a: f64 = a.parse().map_err(|_| PhonemeError::ParseError(lineno + 1))?;
                let b: f64 = b.parse().map_err(|_| PhonemeError::ParseError(lineno + 1))?;
                (s, a, b)
            }
            _ => return Err(PhonemeError::ParseError(lineno + 1)),
        };
        if !(onset >= 0.0 && offset > onset) {
            return Err(PhonemeError::ParseError(lineno + 1));
        }
        let phoneme = PhonemeSymbol::new(sym, lang)?;
        let viseme = phoneme_to_viseme(&phoneme)?.id;
        out.push(TimedPhoneme { phoneme, onset, offset, viseme });
    }
    out.sort_by(|a, b| a.onset.partial_cmp(&b.onset).expect("finite onsets"));
    for i in 1..out.len() {
        if out[i].onset < out[i - 1].offset - 1e-12 {
            return Err(PhonemeError::OverlapError(i - 1, i));
        }
    }
    Ok(out)
}

/// Ground timed phonemes into visual units. English is the identity mapping;
/// Mandarin merges each initial+final pair into one syllable unit.
pub fn map_to_visual_units(
    seq: &[TimedPhoneme],
    lang: Lang,
) -> Result<Vec<VisualUnit>, PhonemeError> {
    let mut out = Vec::new();
    match lang {
        Lang::En => {
            for tp in seq {
                out.push(VisualUnit {
                    id: tp.viseme,
                    phonemes: vec![tp.phoneme.clone()],
                    onset: tp.onset,
                    offset: tp.offset,
                    duration: tp.offset - tp.onset,
                    viseme: tp.viseme,
                });
            }
        }
        Lang::Zh => {
            let mut i = 0;
            while i < seq.len() {
                let tp = &seq[i];
                if is_zh_initial(&tp.phoneme.symbol) {
                    let Some(next) = seq.get(i + 1) else {
                        return Err(PhonemeError::DanglingInitial(tp.phoneme.symbol.clone()));
                    };
                    if is_zh_initial(&next.phoneme.symbol) {
                        return Err(PhonemeError::DanglingInitial(tp.phoneme.symbol.clone()));
                    }
                    let id = (tp.viseme + 1) * VISEME_COUNT + next.viseme;
                    out.push(VisualUnit {
                        id,
                        phonemes: vec![tp.phoneme.clone(), next.phoneme.clone()],
                        onset: tp.onset,
                        offset: next.offset,
                        duration: (tp.offset - tp.onset) + (next.offset - next.onset),
                        viseme: next.viseme,
                    });
                    i += 2;
                } else {
                    out.push(VisualUnit {
                        id: tp.viseme,
                        phonemes: vec![tp.phoneme.clone()],
                        onset: tp.onset,
                        offset: tp.offset,
                        duration: tp.offset - tp.onset,
                        viseme: tp.viseme,
                    });
                    i += 1;
                }
            }
        }
    }
    Ok(out)
}

/// Attach deterministic default timings to a bare phoneme sequence (text
/// input has no alignment). Initials/consonant-like symbols get 80 ms,
/// vowels and finals 160 ms.
pub fn assign_default_timings(phonemes: &[PhonemeSymbol]) -> Vec<TimedPhoneme> {
    let mut t = 0.0;
    let mut out = Vec::new();
    for p in phonemes {
        let dur = match p.lang {
            Lang::Zh => {
                if is_zh_initial(&p.symbol) {
                    0.08
                } else {
                    0.16
                }
            }
            Lang::En => {
                let vowel = p.symbol.starts_with(|c: char| "AEIOU".contains(c));
                if vowel {
                    0.16
                } else {
                    0.08
                }
            }
        };
        let viseme = phoneme_to_viseme(p).expect("validated symbol").id;
        out.push(TimedPhoneme { phoneme: p.clone(), onset: t, offset: t + dur, viseme });
        t += dur;
    }
    out
}

/// Map visual units onto condition-token ids. The offset is the reserved
/// token count defined by the sequence vocabulary.
pub fn phoneme_token_ids(units: &[VisualUnit]) -> Vec<u32> {
    units
        .iter()
        .map(|u| {
            debug_assert!(u.id < UNIT_VOCAB);
            crate::armodel::vocab::COND_OFFSET as u32 + u.id as u32
        })
        .collect()
}

/// Inverse of [`phoneme_token_ids`] on the id level.
pub fn unit_ids_from_tokens(tokens: &[u32]) -> Vec<usize> {
    tokens
        .iter()
        .map(|&t| (t as usize).saturating_sub(crate::armodel::vocab::COND_OFFSET))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(s: &str, lang: Lang) -> PhonemeSymbol {
        PhonemeSymbol::new(s, lang).unwrap()
    }

    #[test]
    fn empty_text_yields_empty_sequence() {
        assert_eq!(text_to_phonemes("", Lang::En).unwrap(), vec![]);
        assert_eq!(text_to_phonemes("", Lang::Zh).unwrap(), vec![]);
    }

    #[test]
    fn pinyin_syllable_decomposes_with_tone_stripped() {
        let ph = text_to_phonemes("ma1", Lang::Zh).unwrap();
        assert_eq!(ph, vec![sym("m", Lang::Zh), sym("a", Lang::Zh)]);
        // diacritic tone marks strip the same way
        let ph2 = text_to_phonemes("mā", Lang::Zh).unwrap();
        assert_eq!(ph, ph2);
    }

    #[test]
    fn pinyin_orthography_rules() {
        // y/w spellings
        assert_eq!(text_to_phonemes("wu3", Lang::Zh).unwrap(), vec![sym("u", Lang::Zh)]);
        assert_eq!(
            text_to_phonemes("yue4", Lang::Zh).unwrap(),
            vec![sym("üe", Lang::Zh)]
        );
        // ü after j/q/x written as u
        assert_eq!(
            text_to_phonemes("ju2", Lang::Zh).unwrap(),
            vec![sym("j", Lang::Zh), sym("ü", Lang::Zh)]
        );
        // retroflex initial is matched longest-first
        assert_eq!(
            text_to_phonemes("zhang1", Lang::Zh).unwrap(),
            vec![sym("zh", Lang::Zh), sym("ang", Lang::Zh)]
        );
    }

    #[test]
    fn en_lexicon_lookup() {
        let ph = text_to_phonemes("see", Lang::En).unwrap();
        assert_eq!(ph, vec![sym("S", Lang::En), sym("IY", Lang::En)]);
        assert!(matches!(
            text_to_phonemes("qzxqzx", Lang::En),
            Err(PhonemeError::UnknownWord(_))
        ));
    }

    #[test]
    fn lexicon_covers_at_least_one_thousand_words() {
        assert!(lexicon::en_word_count() >= 1000, "got {}", lexicon::en_word_count());
    }

    #[test]
    fn lexicon_symbols_all_in_inventory() {
        for (word, phones) in lexicon::en_entries() {
            for ph in phones {
                assert!(
                    inventory(Lang::En).contains_key(ph),
                    "word {word} has out-of-inventory symbol {ph}"
                );
            }
        }
    }

    #[test]
    fn viseme_map_is_total_and_many_to_one() {
        let mut used = std::collections::HashSet::new();
        for &(s, _) in tables::EN_PHONEMES.iter() {
            let v = phoneme_to_viseme(&sym(s, Lang::En)).unwrap();
            used.insert(v.id);
        }
        for &(s, _) in tables::ZH_INITIALS.iter().chain(tables::ZH_FINALS.iter()) {
            phoneme_to_viseme(&sym(s, Lang::Zh)).unwrap();
        }
        // strictly fewer classes than phonemes
        assert!(used.len() <= VISEME_COUNT);
        assert!(VISEME_COUNT < tables::EN_PHONEMES.len());
    }

    #[test]
    fn bilabials_map_to_closed_mouth() {
        for s in ["M", "B", "P"] {
            let v = phoneme_to_viseme(&sym(s, Lang::En)).unwrap();
            assert_eq!(v.mouth_archetype.opening, 0.0, "{s}");
        }
        for s in ["m", "b", "p"] {
            let v = phoneme_to_viseme(&sym(s, Lang::Zh)).unwrap();
            assert_eq!(v.mouth_archetype.opening, 0.0, "{s}");
        }
        let aa = phoneme_to_viseme(&sym("AA", Lang::En)).unwrap();
        assert_eq!(aa.mouth_archetype.opening, 1.0);
        assert!(PhonemeSymbol::new("ZZZ", Lang::En).is_err());
    }

    #[test]
    fn alignment_parses_sorts_and_rejects_overlap() {
        let one = parse_alignment("AA 0.00 0.12\n", Lang::En).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].phoneme.symbol, "AA");
        assert!((one[0].onset, one[0].offset) == (0.0, 0.12));

        let unsorted = parse_alignment("IY 0.2 0.3\nS 0.0 0.2\n# trailing comment\n", Lang::En)
            .unwrap();
        assert_eq!(unsorted[0].phoneme.symbol, "S");
        assert_eq!(unsorted[1].phoneme.symbol, "IY");

        let overlap = parse_alignment("M 0.0 0.2\nAA 0.1 0.3\n", Lang::En);
        assert_eq!(overlap.unwrap_err(), PhonemeError::OverlapError(0, 1));

        assert!(matches!(
            parse_alignment("AA x y\n", Lang::En),
            Err(PhonemeError::ParseError(1))
        ));
        assert!(matches!(
            parse_alignment("QQQ 0.0 0.1\n", Lang::En),
            Err(PhonemeError::UnknownPhoneme(_))
        ));
    }

    #[test]
    fn alignment_onsets_strictly_increase_for_valid_files() {
        let seq = parse_alignment("S 0.0 0.1\nIY 0.1 0.25\nM 0.25 0.3\n", Lang::En).unwrap();
        for w in seq.windows(2) {
            assert!(w[0].onset < w[1].onset);
        }
    }

    #[test]
    fn en_units_are_identity_mapping() {
        let seq = parse_alignment("S 0.0 0.1\nIY 0.1 0.3\n", Lang::En).unwrap();
        let units = map_to_visual_units(&seq, Lang::En).unwrap();
        assert_eq!(units.len(), 2);
        assert_eq!(units[0].id, seq[0].viseme);
        assert_eq!(units[1].id, seq[1].viseme);
    }

    #[test]
    fn zh_units_merge_syllables_and_sum_durations() {
        let seq = parse_alignment("m 0.0 0.1\na 0.1 0.3\n", Lang::Zh).unwrap();
        let units = map_to_visual_units(&seq, Lang::Zh).unwrap();
        assert_eq!(units.len(), 1);
        assert!((units[0].duration - 0.3).abs() < 1e-9);
        assert_eq!(units[0].phonemes.len(), 2);
        // fixed enumeration of the (initial viseme, final viseme) pair
        let vi = phoneme_to_viseme(&sym("m", Lang::Zh)).unwrap().id;
        let vf = phoneme_to_viseme(&sym("a", Lang::Zh)).unwrap().id;
        assert_eq!(units[0].id, (vi + 1) * VISEME_COUNT + vf);
        assert!(units[0].id < UNIT_VOCAB);
    }

    #[test]
    fn zh_dangling_initial_is_rejected() {
        let seq = parse_alignment("m 0.0 0.1\n", Lang::Zh).unwrap();
        assert!(matches!(
            map_to_visual_units(&seq, Lang::Zh),
            Err(PhonemeError::DanglingInitial(_))
        ));
        let seq2 = parse_alignment("m 0.0 0.1\nb 0.1 0.2\na 0.2 0.3\n", Lang::Zh).unwrap();
        assert!(matches!(
            map_to_visual_units(&seq2, Lang::Zh),
            Err(PhonemeError::DanglingInitial(_))
        ));
    }

    #[test]
    fn empty_sequence_maps_to_no_units() {
        assert_eq!(map_to_visual_units(&[], Lang::En).unwrap(), vec![]);
        assert_eq!(map_to_visual_units(&[], Lang::Zh).unwrap(), vec![]);
    }

    #[test]
    fn unit_durations_partition_contiguous_spans() {
        let seq = parse_alignment("m 0.0 0.1\na 0.1 0.3\nh 0.3 0.35\nao 0.35 0.6\n", Lang::Zh)
            .unwrap();
        let units = map_to_visual_units(&seq, Lang::Zh).unwrap();
        let total: f64 = units.iter().map(|u| u.duration).sum();
        let span = seq.last().unwrap().offset - seq[0].onset;
        assert!((total - span).abs() < 1e-9);
    }

    #[test]
    fn token_ids_round_trip() {
        assert!(phoneme_token_ids(&[]).is_empty());
        let seq = parse_alignment("S 0.0 0.1\nIY 0.1 0.3\n", Lang::En).unwrap();
        let units = map_to_visual_units(&seq, Lang::En).unwrap();
        let toks = phoneme_token_ids(&units);
        assert_eq!(toks.len(), units.len());
        let back = unit_ids_from_tokens(&toks);
        let ids: Vec<usize> = units.iter().map(|u| u.id).collect();
        assert_eq!(back, ids);
        for (t, u) in toks.iter().zip(units.iter()) {
            assert_eq!(*t as usize, crate::armodel::vocab::COND_OFFSET + u.id);
        }
    }
}
