#!/usr/bin/env python3
"""
tangletwist 命令行脚本

用有理缠结块扭转链环图的交叉，并检查充分、齐性、交错型与正性等类别。

使用方法：
1. pip install -r requirements.txt
2. python tangletwist.py catalog
3. python tangletwist.py check catalog:10_152
4. python tangletwist.py twist catalog:trefoil --crossing 1 --block "[3]"
5. python tangletwist.py verify det-lemma --trials 100 --seed 7
"""

import sys
from pathlib import Path

# 添加项目根目录到路径
sys.path.insert(0, str(Path(__file__).parent))

from src.cli import main

if __name__ == "__main__":
    sys.exit(main())
