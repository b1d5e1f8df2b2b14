"""Balance-Wheel survey analytics with fuzzy career-readiness assessment.

The package turns 1-10 self-assessment survey cohorts into readiness
verdicts: ingest and validate the cohort, pick features by correlation
against the "Opportunities" target, fit linear / SVR / random-forest
regressors, and map crisp predictions onto a triangular linguistic scale.
"""

from careerwheel.dataio import (
    Dataset,
    FieldSpec,
    SurveyResponse,
    SurveySchema,
    TrainTestSplit,
    default_schema,
    generate_synthetic,
    parse_csv,
    split,
)
from careerwheel.fuzzy import (
    FuzzyPartition,
    LinguisticAssessment,
    Triangle,
    alpha_cut,
    default_partition,
    fuzzify,
    membership,
)
from careerwheel.models import (
    ForestModel,
    LinearModel,
    ModelParams,
    SvrModel,
    fit_forest,
    fit_linear,
    fit_svr,
    load_model,
    predict,
    save_model,
)
from careerwheel.stats import describe, pearson, select_features
from careerwheel.evaluation import (
    classification_metrics,
    evaluate_pipeline,
    regression_metrics,
)

__version__ = "0.1.0"
