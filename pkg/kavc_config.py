#!/usr/bin/env python3
"""
검색 설정 관리 유틸리티
witness 길이 한계, 워커 수, selftest 시드를 환경 변수와 명령행에서 읽는다
"""

import os
import sys
from dataclasses import dataclass
from typing import Dict, Mapping, Optional, Union

DEFAULT_MAX_WITNESS_LEN = 8
DEFAULT_SEED = 0
OVER_CHOICES = ('vprime', 'v')
COMMANDS = ('decide', 'separate', 'lang1', 'lang2', 'langeq', 'from-dnf', 'selftest')

ENV_MAX_LEN = 'KAVC_MAX_WITNESS_LEN'
ENV_WORKERS = 'KAVC_WORKERS'
ENV_SEED = 'KAVC_SEED'


def _env_int(env: Mapping[str, str], key: str) -> Optional[int]:
    raw = env.get(key)
    if raw is None or raw == '':
        return None
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{key} must be an integer, got {raw!r}") from None


class SearchConfig:
    """검색 한계 및 병렬 처리 설정 클래스"""

    def __init__(self, max_len: Optional[int] = None, workers: Union[int, str, None] = None,
                 seed: Optional[int] = None, over: str = 'vprime',
                 env: Optional[Mapping[str, str]] = None):
        env = os.environ if env is None else env

        # 명시적 인자가 환경 변수보다 우선
        if max_len is None:
            max_len = _env_int(env, ENV_MAX_LEN)
        if workers is None:
            workers = env.get(ENV_WORKERS) or 1
        if seed is None:
            seed = _env_int(env, ENV_SEED)

        self.max_len = DEFAULT_MAX_WITNESS_LEN if max_len is None else max_len
        self.seed = DEFAULT_SEED if seed is None else seed
        self.workers = self._resolve_workers(workers)
        self.over = over

        if self.max_len < 0:
            raise ValueError(f"max_len must be non-negative, got {self.max_len}")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError(f"seed must be a 64-bit natural, got {self.seed}")
        if self.over not in OVER_CHOICES:
            raise ValueError(f"over must be one of {', '.join(OVER_CHOICES)}, got {self.over!r}")

    @staticmethod
    def _resolve_workers(workers: Union[int, str]) -> int:
        """'auto'는 CPU 수에 맞춘 워커 수"""
        if isinstance(workers, str):
            if workers == 'auto':
                return min(4, os.cpu_count() or 1)
            try:
                workers = int(workers)
            except ValueError:
                raise ValueError(f"workers must be an integer or 'auto', got {workers!r}") from None
        if workers < 1:
            raise ValueError(f"workers must be at least 1, got {workers}")
        return workers

    def get_optimal_settings(self) -> Dict:
        return {
            'max_len': self.max_len,
            'workers': self.workers,
            'seed': self.seed,
            'over': self.over,
        }

    def print_config_info(self, stream=None):
        """설정 정보 출력 (stderr)"""
        stream = stream or sys.stderr
        print("🔧 검색 설정:", file=stream)
        print(f"   witness 길이 한계: {self.max_len}", file=stream)
        print(f"   워커 수: {self.workers}", file=stream)
        print(f"   시드: {self.seed}", file=stream)
        print(f"   해석: {self.over}", file=stream)


@dataclass
class CliConfig:
    command: str
    search: SearchConfig
    json: bool = False
    verbose: bool = False
    complete_only: bool = False

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")

    @property
    def max_len(self) -> int:
        return self.search.max_len

    @property
    def seed(self) -> int:
        return self.search.seed

    @property
    def over(self) -> str:
        return self.search.over

    def describe(self) -> Dict:
        settings = {'command': self.command, 'json': self.json}
        settings.update(self.search.get_optimal_settings())
        return settings
