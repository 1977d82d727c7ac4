from blinker import Namespace
signals = Namespace()

# Sent with the stage name as sender when a pipeline stage begins
stage_started = signals.signal('stage-started')

# Sent with the stage name as sender and an elapsed_ms keyword when a stage ends
stage_finished = signals.signal('stage-finished')

# Sent by the counting engines after N(P) is known: keywords P, count, engine, wall_time_ms
count_completed = signals.signal('count-completed')
