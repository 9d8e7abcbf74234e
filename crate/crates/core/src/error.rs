use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CsdError {
    #[error("wordlength {0} exceeds the supported maximum of {max}", max = crate::MAX_WORDLENGTH)]
    WordlengthTooLarge(u32),

    #[error("value {value} does not fit in {wordlength} binary digits")]
    ValueTooWide { value: u64, wordlength: u32 },

    #[error("invalid signed-digit masks: {0}")]
    InvalidRep(&'static str),

    #[error("unknown converter `{0}`")]
    UnknownConverter(String),

    #[error("invalid digit {0:?} in signed-digit string")]
    InvalidDigit(char),

    #[error("signed-digit string is empty")]
    EmptyDigitString,

    #[error("enumeration bound violated: {0}")]
    Guard(String),

    #[error("empty check domain")]
    EmptyDomain,
}
