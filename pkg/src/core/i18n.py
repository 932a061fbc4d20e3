"""
S-graph Workbench - Internationalization (I18n)
Provides translation support for English and Chinese CLI and log messages.
"""

from src.core.config import get_config

# Translation dictionary
TRANSLATIONS = {
    'en': {
        'app_name': 'S-graph Workbench',
        'app_description': 'Verification workbench for canonical S-graphs and the polytopes K(c).',

        # Logger & Task Status
        'status_start': 'Start',
        'status_finish': 'Finish',
        'status_failed': 'Failed',

        # Operations
        'op_build': 'Build',
        'op_enumerate': 'Enumerate',
        'op_verify': 'Verify',
        'op_sweep': 'Sweep',
        'op_reconstruct': 'Reconstruct',
        'op_count': 'Count',

        # Progress
        'progress_units': '{current}/{total} units',
        'progress_check': '{check} {current}/{total}',
        'eta_left': '{time} left',

        # Verdicts
        'verdict_pass': 'PASS',
        'verdict_fail': 'FAIL',
        'verdict_skipped': 'SKIPPED',
        'counterexample_found': 'Counterexample in {check}: {detail}',
        'summary_line': '{check}: {status} ({units} units, {failures} counterexamples)',

        # Errors
        'error_input': 'Invalid input: {message}',
        'error_crash_dump': 'Unexpected error. Details written to {path}',
        'error_missing_function': 'Provide exactly one of the function text, --heights or --json',
        'error_invalid_profile': 'Height profile {heights} is not admissible ({clauses})',

        # Reconstruction
        'not_representable': 'Not representable: {reason}',
        'rebuild_incomplete': 'Rebuild incomplete after {explored} nodes (blocked at move {move})',
    },
    'zh': {
        'app_name': 'S 图工作台',
        'app_description': '规范 S 图与多面体 K(c) 的验证工作台。',

        # Logger & Task Status
        'status_start': '开始',
        'status_finish': '完成',
        'status_failed': '失败',

        # Operations
        'op_build': '构建',
        'op_enumerate': '枚举',
        'op_verify': '验证',
        'op_sweep': '批量验证',
        'op_reconstruct': '重构',
        'op_count': '计数',

        # Progress
        'progress_units': '{current}/{total} 个单元',
        'progress_check': '{check} {current}/{total}',
        'eta_left': '剩余 {time}',

        # Verdicts
        'verdict_pass': '通过',
        'verdict_fail': '失败',
        'verdict_skipped': '跳过',
        'counterexample_found': '{check} 中发现反例: {detail}',
        'summary_line': '{check}: {status}（{units} 个单元，{failures} 个反例）',

        # Errors
        'error_input': '输入无效: {message}',
        'error_crash_dump': '发生意外错误，详情已写入 {path}',
        'error_missing_function': '请仅提供函数文本、--heights 或 --json 之一',
        'error_invalid_profile': '高度剖面 {heights} 不可容许（{clauses}）',

        # Reconstruction
        'not_representable': '无法表示: {reason}',
        'rebuild_incomplete': '重建在 {explored} 个节点后未完成（阻塞于第 {move} 步）',
    }
}


def _(key, **kwargs):
    """
    Translate a key into the current language.
    Supports interpolation via kwargs.
    """
    config = get_config()
    lang = config.language

    translated = TRANSLATIONS.get(lang, TRANSLATIONS['en']).get(key, key)

    # If key not found in the current language, try English
    if translated == key and lang != 'en':
        translated = TRANSLATIONS['en'].get(key, key)

    # Apply interpolation
    if kwargs:
        try:
            return translated.format(**kwargs)
        except (KeyError, ValueError):
            return translated

    return translated
