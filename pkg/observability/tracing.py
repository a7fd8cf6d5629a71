"""Step tracing with OpenTelemetry."""

from opentelemetry import trace
from opentelemetry.sdk.trace import TracerProvider
from opentelemetry.sdk.trace.export import ConsoleSpanExporter, SimpleSpanProcessor

from shared.config import get_settings


_tracer = None


def init_tracing():
    """Initialize OpenTelemetry tracing."""
    global _tracer

    settings = get_settings()
    tracer_provider = TracerProvider()

    # Spans are only exported when asked for; otherwise the provider records nothing
    if settings.enable_tracing:
        tracer_provider.add_span_processor(SimpleSpanProcessor(ConsoleSpanExporter()))

    trace.set_tracer_provider(tracer_provider)
    _tracer = trace.get_tracer("hybridsl")


def get_tracer():
    """Get tracer instance."""
    global _tracer

    if _tracer is None:
        init_tracing()

    return _tracer
