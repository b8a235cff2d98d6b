"""classpulse: privacy-preserving learning analytics for chatbot sessions."""

from .affect import AffectLexicon, AffectScores, LexiconProvider, MessageAnalysis, RemoteProvider
from .bloom import BloomLevel, ConversationWindow, VerbTable, classify_bloom, estimate_tokens
from .config import CourseConfig
from .events import clean_events, parse_event_batch
from .session import ingest_batch, run_session
from .simulator import ScenarioSpec, generate_cohort
from .store import StudentStore

__version__ = "0.1.0"

__all__ = [
    "AffectLexicon",
    "AffectScores",
    "BloomLevel",
    "ConversationWindow",
    "CourseConfig",
    "LexiconProvider",
    "MessageAnalysis",
    "RemoteProvider",
    "ScenarioSpec",
    "StudentStore",
    "VerbTable",
    "classify_bloom",
    "clean_events",
    "estimate_tokens",
    "generate_cohort",
    "ingest_batch",
    "parse_event_batch",
    "run_session",
]
