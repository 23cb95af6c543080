from .report import (MetricsReport, SampledSeries, ReportEncoder, summarize, emit, read_report,
                     format_table, round_half_even, person_charges, REPORT_FIELDS)
from .collector import MetricsCollector, collect, served_late
