"""
Метрики, эксперименты с переключателями компонентов, файлы конфигурации и отчеты.
"""
from .metrics import FamilyMetrics, MetricsReport, accuracy, average_precision, summarize
from .experiment import (AblationFlags, Comparison, ExperimentConfig, ablation_ladder, compare_ablation,
                         evaluate_samples, fixed_prompt_flags, run_experiment, sweep_steps, train_detector,
                         worker_count)
from .config_file import dump_config, load_config, parse_config, save_config
from .report import emit_report, report_from_dict, report_to_dict

__all__ = [
    'FamilyMetrics',
    'MetricsReport',
    'accuracy',
    'average_precision',
    'summarize',
    'AblationFlags',
    'Comparison',
    'ExperimentConfig',
    'ablation_ladder',
    'compare_ablation',
    'evaluate_samples',
    'fixed_prompt_flags',
    'run_experiment',
    'sweep_steps',
    'train_detector',
    'worker_count',
    'dump_config',
    'load_config',
    'parse_config',
    'save_config',
    'emit_report',
    'report_from_dict',
    'report_to_dict',
]
