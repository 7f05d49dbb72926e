"""
Telegram notifications for stress runs.

Setup:
1. Create a bot with @BotFather on Telegram
2. Start a chat with the bot and read your chat id from getUpdates
3. Set env vars:
   - TELEGRAM_BOT_TOKEN: Your bot token
   - TELEGRAM_CHAT_ID: Your chat ID
"""

import logging
import requests
from typing import Dict, Any

from config import TELEGRAM_BOT_TOKEN, TELEGRAM_CHAT_ID

log = logging.getLogger("tdyn.telegram")


def is_enabled() -> bool:
    """Check if Telegram alerts are configured."""
    return bool(TELEGRAM_BOT_TOKEN) and bool(TELEGRAM_CHAT_ID)


def send_message(text: str) -> bool:
    """Send a message to Telegram. Returns True on success."""
    if not is_enabled():
        return False

    try:
        url = f"https://api.telegram.org/bot{TELEGRAM_BOT_TOKEN}/sendMessage"
        payload = {
            "chat_id": TELEGRAM_CHAT_ID,
            "text": text,
            "parse_mode": "HTML",
        }
        resp = requests.post(url, json=payload, timeout=10)
        if resp.status_code == 200:
            log.debug(f"Telegram message sent: {text[:50]}...")
            return True
        else:
            log.warning(f"Telegram API error: {resp.status_code} - {resp.text}")
            return False
    except Exception as e:
        log.warning(f"Failed to send Telegram message: {e}")
        return False


def format_run(report: Dict[str, Any]) -> str:
    bad = report.get("mismatches", 0)
    emoji = "❌" if bad else "✅"
    text = (
        f"{emoji} <b>stress {report.get('mode')}</b> "
        f"n={report.get('n')} k={report.get('k')} seed={report.get('seed')}\n"
        f"ops={report.get('ops')} mismatches={bad}"
    )
    if bad and report.get("first_mismatch"):
        text += f"\n{report['first_mismatch']}"
    return text


def notify_run(report: Dict[str, Any]) -> bool:
    """One-line summary of a finished stress run."""
    if not is_enabled():
        return False
    return send_message(format_run(report))
