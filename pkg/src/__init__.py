# 体素软体机器人身体与大脑协同优化
