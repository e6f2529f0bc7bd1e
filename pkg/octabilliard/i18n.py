"""
Translated CLI messages. Catalogs live in ``locales/<lang>/LC_MESSAGES``
and are compiled with ``python setup.py compile_catalog``.
"""

import contextlib
import gettext as _gettext
import os
import warnings
from functools import cache
from typing import Iterator

DOMAIN = "octabilliard"
LOCALE_DIR = os.path.join(
    os.path.abspath(os.path.join(os.path.dirname(__file__), "..")), "locales"
)
LANGUAGES = ("en", "ru")
FALLBACK_LANGUAGE = "en"

_current_language = FALLBACK_LANGUAGE


@cache
def _catalog(language: str) -> _gettext.NullTranslations:
    if language == FALLBACK_LANGUAGE:
        return _gettext.NullTranslations()
    try:
        return _gettext.translation(DOMAIN, localedir=LOCALE_DIR, languages=[language])
    except FileNotFoundError:
        warnings.warn(
            f"catalog for '{language}' is not compiled, using '{FALLBACK_LANGUAGE}'"
        )
        return _gettext.NullTranslations()


def set_language(language: str) -> str:
    """
    Select the message language.

    Args:
        language: ``"en"`` or ``"ru"``; anything else selects English

    Returns:
        The language actually selected
    """
    global _current_language
    _current_language = language if language in LANGUAGES else FALLBACK_LANGUAGE
    return _current_language


@contextlib.contextmanager
def language(code: str) -> Iterator[str]:
    previous = _current_language
    try:
        yield set_language(code)
    finally:
        set_language(previous)


def _format(text: str, kwargs) -> str:
    if not kwargs:
        return text
    try:
        return text.format(**kwargs)
    except (KeyError, IndexError):
        return text


def gettext(msgid: str, **kwargs) -> str:
    """Translate ``msgid`` and fill its ``{name}`` placeholders."""
    return _format(_catalog(_current_language).gettext(msgid), kwargs)


def ngettext(singular: str, plural: str, n: int, **kwargs) -> str:
    """Plural-aware ``gettext``; ``n`` is also available as ``{n}``."""
    text = _catalog(_current_language).ngettext(singular, plural, n)
    return _format(text, {"n": n, **kwargs})


_ = gettext
