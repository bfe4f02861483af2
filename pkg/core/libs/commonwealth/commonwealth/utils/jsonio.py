import json
from typing import Any


def dumps(content: Any, pretty: bool = False) -> str:
    """Serialize to byte-stable JSON: sorted keys, no trailing spaces.

    Args:
        content (Any): JSON compatible object.
        pretty (bool): Indent with two spaces instead of the compact form.

    Returns:
        str: Serialized text, without trailing newline.
    """
    if pretty:
        return json.dumps(content, ensure_ascii=False, allow_nan=False, indent=2, sort_keys=True)
    return json.dumps(content, ensure_ascii=False, allow_nan=False, separators=(",", ":"), sort_keys=True)


