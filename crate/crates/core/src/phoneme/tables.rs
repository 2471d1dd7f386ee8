//! Static inventories: the viseme classes, the ARPAbet-style English phoneme
//! set, and the pinyin initial/final decomposition tables, each with its
//! viseme assignment. The viseme granularity is deliberately coarse — twelve
//! classes is enough to drive a parametric mouth.

use super::MouthParams;

/// Viseme class ids. Order is fixed; unit ids and mask tests depend on it.
pub const V_CLOSED: usize = 0;
pub const V_OPEN: usize = 1;
pub const V_WIDE: usize = 2;
pub const V_ROUNDED: usize = 3;
pub const V_DENTAL: usize = 4;
pub const V_LABIODENTAL: usize = 5;
pub const V_SPREAD: usize = 6;
pub const V_MID: usize = 7;
pub const V_NARROW: usize = 8;
pub const V_RETROFLEX: usize = 9;
pub const V_NEUTRAL: usize = 10;
pub const V_SILENCE: usize = 11;

pub const VISEME_COUNT: usize = 12;

/// (name, opening, width, rounding) per viseme id.
pub const VISEME_TABLE: [(&str, f64, f64, f64); VISEME_COUNT] = [
    ("closed", 0.0, 0.5, 0.2),
    ("open", 1.0, 0.6, 0.4),
    ("wide", 0.25, 1.0, 0.0),
    ("rounded", 0.35, 0.25, 1.0),
    ("dental", 0.3, 0.6, 0.1),
    ("labiodental", 0.15, 0.55, 0.15),
    ("spread", 0.15, 0.8, 0.0),
    ("mid", 0.55, 0.6, 0.3),
    ("narrow", 0.6, 0.45, 0.75),
    ("retroflex", 0.3, 0.5, 0.6),
    ("neutral", 0.3, 0.5, 0.3),
    ("silence", 0.05, 0.4, 0.25),
];

/// The resting mouth used as the interpolation base when a viseme is applied
/// at partial intensity.
pub const NEUTRAL_MOUTH: MouthParams = MouthParams { opening: 0.3, width: 0.5, rounding: 0.3 };

/// English inventory (stress-free ARPAbet) with viseme assignment.
pub const EN_PHONEMES: [(&str, usize); 41] = [
    ("AA", V_OPEN),
    ("AE", V_OPEN),
    ("AH", V_MID),
    ("AO", V_NARROW),
    ("AW", V_NARROW),
    ("AY", V_OPEN),
    ("B", V_CLOSED),
    ("CH", V_RETROFLEX),
    ("D", V_DENTAL),
    ("DH", V_DENTAL),
    ("EH", V_MID),
    ("ER", V_MID),
    ("EY", V_WIDE),
    ("F", V_LABIODENTAL),
    ("G", V_NEUTRAL),
    ("HH", V_NEUTRAL),
    ("IH", V_WIDE),
    ("IY", V_WIDE),
    ("JH", V_RETROFLEX),
    ("K", V_NEUTRAL),
    ("L", V_DENTAL),
    ("M", V_CLOSED),
    ("N", V_DENTAL),
    ("NG", V_NEUTRAL),
    ("OW", V_NARROW),
    ("OY", V_NARROW),
    ("P", V_CLOSED),
    ("R", V_RETROFLEX),
    ("S", V_SPREAD),
    ("SH", V_RETROFLEX),
    ("T", V_DENTAL),
    ("TH", V_DENTAL),
    ("UH", V_ROUNDED),
    ("UW", V_ROUNDED),
    ("V", V_LABIODENTAL),
    ("W", V_ROUNDED),
    ("Y", V_WIDE),
    ("Z", V_SPREAD),
    ("ZH", V_RETROFLEX),
    ("SIL", V_SILENCE),
    ("SP", V_SILENCE),
];

/// Pinyin initials with viseme assignment. Longest-match order is handled by
/// the parser, not by table order.
pub const ZH_INITIALS: [(&str, usize); 21] = [
    ("b", V_CLOSED),
    ("p", V_CLOSED),
    ("m", V_CLOSED),
    ("f", V_LABIODENTAL),
    ("d", V_DENTAL),
    ("t", V_DENTAL),
    ("n", V_DENTAL),
    ("l", V_DENTAL),
    ("g", V_NEUTRAL),
    ("k", V_NEUTRAL),
    ("h", V_NEUTRAL),
    ("j", V_WIDE),
    ("q", V_WIDE),
    ("x", V_WIDE),
    ("zh", V_RETROFLEX),
    ("ch", V_RETROFLEX),
    ("sh", V_RETROFLEX),
    ("r", V_RETROFLEX),
    ("z", V_SPREAD),
    ("c", V_SPREAD),
    ("s", V_SPREAD),
];

/// Pinyin finals (phonemic spelling, ü written as-is) with viseme assignment.
pub const ZH_FINALS: [(&str, usize); 37] = [
    ("a", V_OPEN),
    ("o", V_NARROW),
    ("e", V_MID),
    ("i", V_WIDE),
    ("u", V_ROUNDED),
    ("ü", V_ROUNDED),
    ("er", V_RETROFLEX),
    ("ai", V_OPEN),
    ("ei", V_WIDE),
    ("ao", V_NARROW),
    ("ou", V_NARROW),
    ("an", V_OPEN),
    ("en", V_MID),
    ("ang", V_OPEN),
    ("eng", V_MID),
    ("ong", V_ROUNDED),
    ("ia", V_OPEN),
    ("ie", V_WIDE),
    ("iao", V_NARROW),
    ("iu", V_NARROW),
    ("ian", V_OPEN),
    ("in", V_WIDE),
    ("iang", V_OPEN),
    ("ing", V_WIDE),
    ("iong", V_ROUNDED),
    ("ua", V_OPEN),
    ("uo", V_NARROW),
    ("uai", V_OPEN),
    ("ui", V_WIDE),
    ("uan", V_OPEN),
    ("un", V_ROUNDED),
    ("uang", V_OPEN),
    ("ueng", V_MID),
    ("üe", V_ROUNDED),
    ("üan", V_OPEN),
    ("ün", V_ROUNDED),
    ("sil", V_SILENCE),
];

/// Whole-syllable orthographic rewrites (y-/w- spellings) applied before
/// initial/final splitting. Maps written syllable -> phonemic final.
pub const ZH_Y_W_SYLLABLES: [(&str, &str); 25] = [
    ("yi", "i"),
    ("ya", "ia"),
    ("ye", "ie"),
    ("yao", "iao"),
    ("you", "iu"),
    ("yan", "ian"),
    ("yin", "in"),
    ("yang", "iang"),
    ("ying", "ing"),
    ("yong", "iong"),
    ("yu", "ü"),
    ("yue", "üe"),
    ("yuan", "üan"),
    ("yun", "ün"),
    ("wu", "u"),
    ("wa", "ua"),
    ("wo", "uo"),
    ("wai", "uai"),
    ("wei", "ui"),
    ("wan", "uan"),
    ("wen", "un"),
    ("wang", "uang"),
    ("weng", "ueng"),
    ("w", "u"),
    ("y", "i"),
];
