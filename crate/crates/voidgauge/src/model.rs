//! Typed answer domains for the ten-item questionnaire, plus row-level
//! validation from untyped field maps into coherent [`Response`] values.

use std::collections::BTreeMap;
use std::fmt;

use crate::macros::coded_enum;

/// Canonical column names, in file order.
pub const COLUMNS: [&str; 14] = [
    COL_RESPONDENT_ID,
    COL_LANG,
    COL_ITEM1A,
    COL_ITEM1B,
    COL_ITEM1C,
    COL_ITEM2,
    COL_ITEM3,
    COL_ITEM4,
    COL_ITEM5,
    COL_ITEM6,
    COL_ITEM7,
    COL_ITEM8,
    COL_ITEM9,
    COL_ITEM10,
];

pub const COL_RESPONDENT_ID: &str = "respondent_id";
pub const COL_LANG: &str = "lang";
pub const COL_ITEM1A: &str = "item1a";
pub const COL_ITEM1B: &str = "item1b";
pub const COL_ITEM1C: &str = "item1c";
pub const COL_ITEM2: &str = "item2";
pub const COL_ITEM3: &str = "item3";
pub const COL_ITEM4: &str = "item4";
pub const COL_ITEM5: &str = "item5";
pub const COL_ITEM6: &str = "item6";
pub const COL_ITEM7: &str = "item7";
pub const COL_ITEM8: &str = "item8";
pub const COL_ITEM9: &str = "item9";
pub const COL_ITEM10: &str = "item10";

coded_enum! {
    /// Submission language.
    Lang {
        En => "en",
        Ja => "ja",
    }
}

coded_enum! {
    /// Item 1b: how often the respondent adapts AI output before using it.
    AdaptFrequency {
        Always => "Always",
        Frequently => "Frequently",
        Sometimes => "Sometimes",
        Never => "Never",
    }
}

coded_enum! {
    /// Items 2, 4, 5, 6: three-way closed answers. `Unsure` is a substantive
    /// response, not a missing value.
    YesNoUnsure {
        Yes => "Yes",
        No => "No",
        Unsure => "Unsure",
    }
}

coded_enum! {
    /// Item 3: exam policy the respondent would set for their own students.
    ExamPolicy {
        FullyAllow => "FullyAllow",
        Limit => "Limit",
        Forbid => "Forbid",
        Unsure => "Unsure",
    }
}

coded_enum! {
    /// Item 7: whether current AI differs from earlier tools in kind or only
    /// in degree.
    ToolDifference {
        OnlyDegree => "OnlyDegree",
        InKind => "InKind",
        Unsure => "Unsure",
    }
}

coded_enum! {
    /// Item 8: willingness to share one's own prompts with students.
    PromptSharing {
        Yes => "Yes",
        NeedMoreInfo => "NeedMoreInfo",
        No => "No",
    }
}

coded_enum! {
    /// Item 9: stance on whether the intellect is reducible to material
    /// computation.
    IntellectView {
        Material => "Material",
        Immaterial => "Immaterial",
        Unsure => "Unsure",
    }
}

/// Canonical answer codes for an enum-valued column, or `None` for columns
/// holding free text, numbers, or identifiers.
pub fn canonical_codes(column: &str) -> Option<&'static [&'static str]> {
    fn codes<T: Copy + 'static>(all: &'static [T], f: fn(T) -> &'static str) -> Vec<&'static str> {
        all.iter().map(|&v| f(v)).collect()
    }
    use std::sync::OnceLock;
    static TABLE: OnceLock<BTreeMap<&'static str, Vec<&'static str>>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        let mut m = BTreeMap::new();
        m.insert(COL_LANG, codes(Lang::ALL, Lang::code));
        m.insert(COL_ITEM1B, codes(AdaptFrequency::ALL, AdaptFrequency::code));
        for col in [COL_ITEM2, COL_ITEM4, COL_ITEM5, COL_ITEM6] {
            m.insert(col, codes(YesNoUnsure::ALL, YesNoUnsure::code));
        }
        m.insert(COL_ITEM3, codes(ExamPolicy::ALL, ExamPolicy::code));
        m.insert(COL_ITEM7, codes(ToolDifference::ALL, ToolDifference::code));
        m.insert(COL_ITEM8, codes(PromptSharing::ALL, PromptSharing::code));
        m.insert(COL_ITEM9, codes(IntellectView::ALL, IntellectView::code));
        m
    });
    table.get(column).map(|v| v.as_slice())
}

/// A value that is not a legal code for its field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownLabel {
    pub value: String,
}

impl fmt::Display for UnknownLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown label {:?}", self.value)
    }
}

impl std::error::Error for UnknownLabel {}

/// One untyped row: field name to field value. An empty string and a missing
/// key both mean "no answer".
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawRecord {
    fields: BTreeMap<String, String>,
}

impl RawRecord {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, field: impl Into<String>, value: impl Into<String>) {
        self.fields.insert(field.into(), value.into());
    }

    /// The stored value, with empty strings normalized to absent.
    pub fn get(&self, field: &str) -> Option<&str> {
        match self.fields.get(field) {
            Some(v) if !v.is_empty() => Some(v),
            _ => None,
        }
    }

    pub fn fields(&self) -> impl Iterator<Item = (&str, &str)> {
        self.fields.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }
}

impl<K: Into<String>, V: Into<String>> FromIterator<(K, V)> for RawRecord {
    fn from_iter<I: IntoIterator<Item = (K, V)>>(iter: I) -> Self {
        let mut r = RawRecord::new();
        for (k, v) in iter {
            r.set(k, v);
        }
        r
    }
}

/// Which validation rule a field broke.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    Range,
    MissingMandatory,
    Coherence,
    UnknownLabel,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::Range => "RangeError",
            Rule::MissingMandatory => "MissingMandatory",
            Rule::Coherence => "CoherenceError",
            Rule::UnknownLabel => "UnknownLabel",
        })
    }
}

/// One rule violation on one field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub field: String,
    pub rule: Rule,
    pub message: String,
}

impl Violation {
    fn new(field: &str, rule: Rule, message: impl Into<String>) -> Self {
        Violation {
            field: field.to_string(),
            rule,
            message: message.into(),
        }
    }

    fn missing(field: &str) -> Self {
        Violation::new(field, Rule::MissingMandatory, "no answer recorded")
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}: {}", self.field, self.rule, self.message)
    }
}

/// Everything wrong with one row. A row either validates cleanly (possibly
/// with repairs noted as warnings) or is rejected with this report.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ValidationReport {}

/// Opaque respondent identifier. Uniqueness is a dataset-level property
/// enforced at ingest, not here.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RespondentId(String);

impl RespondentId {
    pub fn new(id: impl Into<String>) -> Self {
        RespondentId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for RespondentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Typed answers before coherence checks. Construct one of these to build
/// records programmatically; [`ItemScales::from_draft`] applies the same
/// rules that file ingest does.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ItemDraft {
    /// 0..=10 self-placement of AI skill relative to own students.
    pub item1a: u8,
    pub item1b: AdaptFrequency,
    /// 0..=100 percent contribution; answered only when item1b is not Never.
    pub item1c: Option<u8>,
    pub item2: YesNoUnsure,
    pub item3: ExamPolicy,
    pub item4: YesNoUnsure,
    pub item5: YesNoUnsure,
    pub item6: YesNoUnsure,
    pub item7: ToolDifference,
    pub item8: PromptSharing,
    pub item9: IntellectView,
    /// Free-text reflection; empty text is normalized to absent.
    pub item10: Option<String>,
}

/// Validated, coherent answers. Invariants: item1a <= 10, item1c <= 100,
/// item1c is present exactly when item1b is not Never, item10 is never
/// Some(empty).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ItemScales {
    item1a: u8,
    item1b: AdaptFrequency,
    item1c: Option<u8>,
    item2: YesNoUnsure,
    item3: ExamPolicy,
    item4: YesNoUnsure,
    item5: YesNoUnsure,
    item6: YesNoUnsure,
    item7: ToolDifference,
    item8: PromptSharing,
    item9: IntellectView,
    item10: Option<String>,
}

impl ItemScales {
    /// Checks ranges and cross-field coherence. The one repairable defect,
    /// item1c answered despite item1b = Never, is dropped and reported as a
    /// warning instead of rejecting the row.
    pub fn from_draft(draft: ItemDraft) -> Result<(ItemScales, Vec<Violation>), ValidationReport> {
        let mut violations = Vec::new();
        let mut warnings = Vec::new();

        if draft.item1a > 10 {
            violations.push(Violation::new(
                COL_ITEM1A,
                Rule::Range,
                format!("{} is outside 0..=10", draft.item1a),
            ));
        }
        if let Some(c) = draft.item1c {
            if c > 100 {
                violations.push(Violation::new(
                    COL_ITEM1C,
                    Rule::Range,
                    format!("{c} is outside 0..=100"),
                ));
            }
        }

        let item1c = match (draft.item1b, draft.item1c) {
            (AdaptFrequency::Never, Some(_)) => {
                warnings.push(Violation::new(
                    COL_ITEM1C,
                    Rule::Coherence,
                    "answered although item1b is Never; dropped as inapplicable",
                ));
                None
            }
            (AdaptFrequency::Never, None) => None,
            (_, None) => {
                violations.push(Violation::missing(COL_ITEM1C));
                None
            }
            (_, c) => c,
        };

        if !violations.is_empty() {
            return Err(ValidationReport { violations });
        }

        let item10 = draft.item10.filter(|t| !t.is_empty());
        Ok((
            ItemScales {
                item1a: draft.item1a,
                item1b: draft.item1b,
                item1c,
                item2: draft.item2,
                item3: draft.item3,
                item4: draft.item4,
                item5: draft.item5,
                item6: draft.item6,
                item7: draft.item7,
                item8: draft.item8,
                item9: draft.item9,
                item10,
            },
            warnings,
        ))
    }

    pub fn item1a(&self) -> u8 {
        self.item1a
    }

    pub fn item1b(&self) -> AdaptFrequency {
        self.item1b
    }

    pub fn item1c(&self) -> Option<u8> {
        self.item1c
    }

    pub fn item2(&self) -> YesNoUnsure {
        self.item2
    }

    pub fn item3(&self) -> ExamPolicy {
        self.item3
    }

    pub fn item4(&self) -> YesNoUnsure {
        self.item4
    }

    pub fn item5(&self) -> YesNoUnsure {
        self.item5
    }

    pub fn item6(&self) -> YesNoUnsure {
        self.item6
    }

    pub fn item7(&self) -> ToolDifference {
        self.item7
    }

    pub fn item8(&self) -> PromptSharing {
        self.item8
    }

    pub fn item9(&self) -> IntellectView {
        self.item9
    }

    pub fn item10(&self) -> Option<&str> {
        self.item10.as_deref()
    }
}

/// One validated survey response.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Response {
    id: RespondentId,
    lang: Lang,
    scales: ItemScales,
}

impl Response {
    pub fn new(id: RespondentId, lang: Lang, scales: ItemScales) -> Self {
        Response { id, lang, scales }
    }

    pub fn id(&self) -> &RespondentId {
        &self.id
    }

    pub fn lang(&self) -> Lang {
        self.lang
    }

    pub fn scales(&self) -> &ItemScales {
        &self.scales
    }

    /// Serializes back to canonical field strings. Absent answers become
    /// empty strings so every canonical column is present.
    pub fn to_raw(&self) -> RawRecord {
        let s = &self.scales;
        let mut r = RawRecord::new();
        r.set(COL_RESPONDENT_ID, self.id.as_str());
        r.set(COL_LANG, self.lang.code());
        r.set(COL_ITEM1A, s.item1a.to_string());
        r.set(COL_ITEM1B, s.item1b.code());
        r.set(COL_ITEM1C, s.item1c.map(|c| c.to_string()).unwrap_or_default());
        r.set(COL_ITEM2, s.item2.code());
        r.set(COL_ITEM3, s.item3.code());
        r.set(COL_ITEM4, s.item4.code());
        r.set(COL_ITEM5, s.item5.code());
        r.set(COL_ITEM6, s.item6.code());
        r.set(COL_ITEM7, s.item7.code());
        r.set(COL_ITEM8, s.item8.code());
        r.set(COL_ITEM9, s.item9.code());
        r.set(COL_ITEM10, s.item10.as_deref().unwrap_or_default());
        r
    }
}

/// Outcome of validating one row: the response plus any repairs applied.
#[derive(Debug, Clone, PartialEq)]
pub struct Validated {
    pub response: Response,
    pub warnings: Vec<Violation>,
}

fn parse_code<T>(raw: &RawRecord, col: &str, violations: &mut Vec<Violation>) -> Option<T>
where
    T: std::str::FromStr<Err = UnknownLabel>,
{
    match raw.get(col) {
        None => {
            violations.push(Violation::missing(col));
            None
        }
        Some(s) => match s.parse() {
            Ok(v) => Some(v),
            Err(e) => {
                violations.push(Violation::new(col, Rule::UnknownLabel, e.to_string()));
                None
            }
        },
    }
}

fn parse_scale(
    raw: &RawRecord,
    col: &str,
    max: u8,
    mandatory: bool,
    violations: &mut Vec<Violation>,
) -> Option<u8> {
    let s = match raw.get(col) {
        Some(s) => s,
        None => {
            if mandatory {
                violations.push(Violation::missing(col));
            }
            return None;
        }
    };
    match s.trim().parse::<i64>() {
        Ok(v) if (0..=i64::from(max)).contains(&v) => Some(v as u8),
        Ok(v) => {
            violations.push(Violation::new(
                col,
                Rule::Range,
                format!("{v} is outside 0..={max}"),
            ));
            None
        }
        Err(_) => {
            violations.push(Violation::new(
                col,
                Rule::Range,
                format!("{s:?} is not an integer in 0..={max}"),
            ));
            None
        }
    }
}

/// Validates one untyped row against every field and coherence rule.
/// All violations for the row are reported together, not just the first.
pub fn validate(raw: &RawRecord) -> Result<Validated, ValidationReport> {
    let mut violations = Vec::new();

    let id = match raw.get(COL_RESPONDENT_ID) {
        Some(s) => Some(RespondentId::new(s)),
        None => {
            violations.push(Violation::missing(COL_RESPONDENT_ID));
            None
        }
    };
    let lang = parse_code::<Lang>(raw, COL_LANG, &mut violations);
    let item1a = parse_scale(raw, COL_ITEM1A, 10, true, &mut violations);
    let item1b = parse_code::<AdaptFrequency>(raw, COL_ITEM1B, &mut violations);
    let item1c = parse_scale(raw, COL_ITEM1C, 100, false, &mut violations);
    let item2 = parse_code::<YesNoUnsure>(raw, COL_ITEM2, &mut violations);
    let item3 = parse_code::<ExamPolicy>(raw, COL_ITEM3, &mut violations);
    let item4 = parse_code::<YesNoUnsure>(raw, COL_ITEM4, &mut violations);
    let item5 = parse_code::<YesNoUnsure>(raw, COL_ITEM5, &mut violations);
    let item6 = parse_code::<YesNoUnsure>(raw, COL_ITEM6, &mut violations);
    let item7 = parse_code::<ToolDifference>(raw, COL_ITEM7, &mut violations);
    let item8 = parse_code::<PromptSharing>(raw, COL_ITEM8, &mut violations);
    let item9 = parse_code::<IntellectView>(raw, COL_ITEM9, &mut violations);
    let item10 = raw.get(COL_ITEM10).map(str::to_string);

    if !violations.is_empty() {
        return Err(ValidationReport { violations });
    }

    let draft = ItemDraft {
        item1a: item1a.unwrap(),
        item1b: item1b.unwrap(),
        item1c,
        item2: item2.unwrap(),
        item3: item3.unwrap(),
        item4: item4.unwrap(),
        item5: item5.unwrap(),
        item6: item6.unwrap(),
        item7: item7.unwrap(),
        item8: item8.unwrap(),
        item9: item9.unwrap(),
        item10,
    };
    let (scales, warnings) = ItemScales::from_draft(draft)?;
    Ok(Validated {
        response: Response::new(id.unwrap(), lang.unwrap(), scales),
        warnings,
    })
}
